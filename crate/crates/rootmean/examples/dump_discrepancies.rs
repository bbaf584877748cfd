//! Prints every printed-table entry that disagrees with the engine, as ledger JSON.

fn main() -> rootmean::Result<()> {
    let mut all = rootmean::fixtures::compare_phi_tables()?;
    all.extend(rootmean::fixtures::compare_gw_tables()?);
    all.extend(rootmean::fixtures::compare_relations()?);
    println!("{}", serde_json::to_string_pretty(&all).expect("discrepancies serialize"));
    Ok(())
}
