use proptest::prelude::*;

use lossy_gossip::poly::{IntVec, PolyCone};
use lossy_gossip::trop::{kleene_star, TropMatrix, TropScalar};

fn scalar() -> impl Strategy<Value = TropScalar> {
    prop_oneof![
        1 => Just(TropScalar::Infinity),
        6 => (-50i64..=50, 1i64..=7).prop_map(|(p, q)| TropScalar::from_ratio(p, q)),
    ]
}

fn matrix(n: usize) -> impl Strategy<Value = TropMatrix> {
    prop::collection::vec(scalar(), n * n).prop_map(move |e| TropMatrix::new(n, e).unwrap())
}

fn nonnegative(n: usize) -> impl Strategy<Value = TropMatrix> {
    prop::collection::vec(prop_oneof![1 => Just(None), 4 => (0i64..=20).prop_map(Some)], n * n).prop_map(move |e| {
        TropMatrix::from_fn(n, |i, j| e[i * n + j].map_or(TropScalar::Infinity, TropScalar::from_int))
    })
}

fn generators() -> impl Strategy<Value = (usize, Vec<IntVec>)> {
    (2usize..=4).prop_flat_map(|d| (Just(d), prop::collection::vec(prop::collection::vec(-3i128..=3, d), 1..=6)))
}

proptest! {
    #[test]
    fn scalar_text_round_trip(x in scalar()) {
        prop_assert_eq!(x.to_string().parse::<TropScalar>().unwrap(), x.clone());
        prop_assert_eq!(serde_json::from_str::<TropScalar>(&serde_json::to_string(&x).unwrap()).unwrap(), x);
    }

    #[test]
    fn matrix_text_and_json_round_trip(m in (1usize..=5).prop_flat_map(matrix)) {
        prop_assert_eq!(m.to_string().parse::<TropMatrix>().unwrap(), m.clone());
        prop_assert_eq!(serde_json::from_str::<TropMatrix>(&serde_json::to_string(&m).unwrap()).unwrap(), m);
    }

    #[test]
    fn kleene_star_is_idempotent_and_below(m in (1usize..=5).prop_flat_map(nonnegative)) {
        let star = kleene_star(&m).unwrap();
        prop_assert_eq!(kleene_star(&star).unwrap(), star.clone());
        prop_assert_eq!(star.tmul(&star).unwrap(), star.clone());
        for (s, a) in star.entries().iter().zip(m.entries()).skip(1) {
            prop_assert!(s <= a || s.is_zero());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn cones_round_trip((d, rays) in generators()) {
        let cone = PolyCone::from_generators(d, &rays).unwrap();
        for r in &rays {
            prop_assert!(cone.contains_point(r).unwrap());
        }
        let facets: Vec<IntVec> = cone.facets().to_vec();
        let equations: Vec<IntVec> = cone.equations().basis().to_vec();
        prop_assert_eq!(PolyCone::from_inequalities(d, &facets, &equations).unwrap(), cone.clone());
        let json = serde_json::to_string(&cone).unwrap();
        prop_assert_eq!(serde_json::from_str::<PolyCone>(&json).unwrap(), cone.clone());
        if cone.is_pointed() && cone.dim() >= 2 {
            let f = cone.f_vector();
            let k = cone.dim();
            let alternating: i64 = (1..k).map(|i| if i % 2 == 1 { f[i - 1] as i64 } else { -(f[i - 1] as i64) }).sum();
            prop_assert_eq!(alternating, 1 + if k.is_multiple_of(2) { 1 } else { -1 });
        }
    }
}
