use num_bigint::BigInt;
use num_complex::Complex64;
use proptest::prelude::*;

use rootmean::exact::{ratio, ExactRational};
use rootmean::gw::{elementary_means, eval_at_means, newton_residual, power_sum_mean};
use rootmean::numeric::{find_roots, NumPoly};
use rootmean::partition::{partition_count, partitions};
use rootmean::relations::RelationVector;
use rootmean::symalg::{BarMonomial, BarSymbol, SymPoly};

fn rational() -> impl Strategy<Value = ExactRational> {
    (-50i64..=50, 1i64..=12).prop_map(|(n, d)| ratio(n, d))
}

fn symbol() -> impl Strategy<Value = BarSymbol> {
    prop_oneof![
        (1u32..=5).prop_map(BarSymbol::Root),
        (1u32..=2).prop_map(|index| BarSymbol::Const { index, base: 4 }),
    ]
}

fn monomial() -> impl Strategy<Value = BarMonomial> {
    prop::collection::vec((symbol(), 1u32..=3), 0..3).prop_map(BarMonomial::from_pairs)
}

fn poly() -> impl Strategy<Value = SymPoly> {
    prop::collection::vec((monomial(), rational()), 0..5).prop_map(|terms| {
        let mut p = SymPoly::zero();
        for (m, q) in terms {
            p.add_term(m, q);
        }
        p
    })
}

proptest! {
    #[test]
    fn rational_field_laws(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if b != ratio(0, 1) {
            prop_assert_eq!(&(&a / &b) * &b, a);
        }
    }

    #[test]
    fn sympoly_ring_laws(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn monomial_weights_add(m in monomial(), n in monomial()) {
        prop_assert_eq!(m.mul(&n).weight(), m.weight() + n.weight());
    }

    #[test]
    fn text_and_json_round_trip(p in poly()) {
        let back = SymPoly::parse_with_base(&p.to_string(), 4).unwrap();
        prop_assert_eq!(&back, &p);
        let json = serde_json::to_string(&p.to_json()).unwrap();
        let parsed = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(SymPoly::from_json(&parsed).unwrap(), p);
    }

    #[test]
    fn newton_identity(vals in prop::collection::vec(rational(), 1..7)) {
        prop_assert_eq!(newton_residual(vals.len() as u32, &vals), ratio(0, 1));
    }

    #[test]
    fn power_sums_from_means(vals in prop::collection::vec(rational(), 1..6), j in 0u32..8) {
        let n = vals.len() as u32;
        let direct: ExactRational =
            vals.iter().map(|v| num_traits::pow(v.clone(), j as usize)).sum::<ExactRational>() / ratio(n as i64, 1);
        prop_assert_eq!(eval_at_means(&power_sum_mean(j, n), &elementary_means(&vals)), direct);
    }

    #[test]
    fn power_sum_is_homogeneous(j in 1u32..10, n in 1u32..7) {
        prop_assert!(power_sum_mean(j, n).is_homogeneous(j));
    }

    #[test]
    fn relation_normalization_is_scale_free(k in 1i64..20, neg in any::<bool>()) {
        let base = [(1i64, 5i64), (2, -6), (3, 1)];
        let s = if neg { -k } else { k };
        let pairs: Vec<(i64, BigInt)> = base.iter().map(|&(r, a)| (r, BigInt::from(a * s))).collect();
        let r = RelationVector::new(4, 0, &pairs).unwrap();
        prop_assert_eq!(r, RelationVector::from_ints(4, 0, &base).unwrap());
    }

    #[test]
    fn planted_roots_recovered(roots in prop::collection::vec((-20i32..=20, -20i32..=20), 1..9)) {
        let mut z: Vec<Complex64> = roots.iter().map(|&(a, b)| Complex64::new(a as f64 / 10.0, b as f64 / 10.0)).collect();
        z.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        z.dedup();
        let p = NumPoly::from_roots(&z).unwrap();
        let fam = find_roots(&p).unwrap();
        for r in &z {
            let close = fam.roots.iter().map(|f| (f - r).norm()).fold(f64::INFINITY, f64::min);
            prop_assert!(close < 1e-8, "root {} missed by {}", r, close);
        }
    }
}

#[test]
fn partitions_match_pentagonal_count() {
    for j in 0..=25 {
        assert_eq!(partitions(j).len() as u64, partition_count(j));
    }
}
