use laumon_patterns::{
    affine_patterns_of_size, enumerate_affine, enumerate_finite, from_lambda_grid, to_lambda_grid, AffinePattern,
    FinitePattern, Step,
};
use proptest::prelude::*;

/// Brute force over the box `0 ≤ d_{ij} ≤ d_i`.
fn brute_finite(n: usize, deg: &[u32]) -> Vec<FinitePattern> {
    let cells: Vec<(usize, usize)> = (1..n).flat_map(|i| (1..=i).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    let mut values = vec![0u32; cells.len()];
    loop {
        let rows: Vec<Vec<u32>> = (1..n)
            .map(|i| {
                cells
                    .iter()
                    .zip(&values)
                    .filter(|((r, _), _)| *r == i)
                    .map(|(_, &x)| x)
                    .collect()
            })
            .collect();
        if let Ok(p) = FinitePattern::new(n, rows) {
            if p.degrees() == deg {
                out.push(p);
            }
        }
        let mut idx = 0;
        loop {
            if idx == cells.len() {
                out.sort();
                return out;
            }
            let bound = deg[cells[idx].0 - 1];
            if values[idx] < bound {
                values[idx] += 1;
                break;
            }
            values[idx] = 0;
            idx += 1;
        }
    }
}

/// Coefficients of `∏_k (1 - q^k)^{-n}` up to `q^max`.
fn tuple_counts(n: usize, max: usize) -> Vec<u64> {
    let mut c = vec![0u64; max + 1];
    c[0] = 1;
    for _ in 0..n {
        for k in 1..=max {
            for m in k..=max {
                c[m] += c[m - k];
            }
        }
    }
    c
}

#[test]
fn finite_enumeration_matches_brute_force() {
    for n in 2..=4 {
        for total in 0..=3u32 {
            for deg in laumon_patterns::degree_vectors(n - 1, total) {
                assert_eq!(enumerate_finite(n, &deg).unwrap(), brute_finite(n, &deg), "{deg:?}");
            }
        }
    }
}

#[test]
fn affine_counts_follow_the_generating_function() {
    for n in 2..=4 {
        let counts = tuple_counts(n, 5);
        for m in 0..=5u32 {
            let by_degree: usize = laumon_patterns::degree_vectors(n, m)
                .iter()
                .map(|d| enumerate_affine(n, d).unwrap().len())
                .sum();
            assert_eq!(by_degree as u64, counts[m as usize]);
            assert_eq!(affine_patterns_of_size(n, m).unwrap().len(), by_degree);
        }
    }
}

#[test]
fn json_encodings() {
    let p = FinitePattern::new(3, vec![vec![1], vec![1, 0]]).unwrap();
    let text = serde_json::to_string(&p).unwrap();
    assert_eq!(text, r#"{"n":3,"d":[[1],[1,0]]}"#);
    assert_eq!(serde_json::from_str::<FinitePattern>(&text).unwrap(), p);
    assert!(serde_json::from_str::<FinitePattern>(r#"{"n":3,"d":[[0],[1,0]]}"#).is_err());

    let a = AffinePattern::new(2, vec![vec![2, 1], vec![]]).unwrap();
    let text = serde_json::to_string(&a).unwrap();
    assert_eq!(text, r#"{"n":2,"lambdas":[[2,1],[]]}"#);
    assert_eq!(serde_json::from_str::<AffinePattern>(&text).unwrap(), a);
    assert!(serde_json::from_str::<AffinePattern>(r#"{"n":2,"lambdas":[[1,2],[]]}"#).is_err());
}

fn finite_pattern() -> impl Strategy<Value = FinitePattern> {
    (2usize..=4, 0u32..=4).prop_flat_map(|(n, total)| {
        let all: Vec<FinitePattern> = laumon_patterns::degree_vectors(n - 1, total)
            .iter()
            .flat_map(|d| enumerate_finite(n, d).unwrap())
            .collect();
        prop::sample::select(all)
    })
}

fn affine_pattern() -> impl Strategy<Value = AffinePattern> {
    (2usize..=4, 0u32..=5).prop_flat_map(|(n, size)| prop::sample::select(affine_patterns_of_size(n, size).unwrap()))
}

proptest! {
    #[test]
    fn finite_neighbors_change_one_entry_by_one(p in finite_pattern(), add in any::<bool>()) {
        let step = if add { Step::Add } else { Step::Remove };
        for i in 1..p.n() {
            for (j, q) in p.neighbors(i, step) {
                let mut diff = 0;
                for r in 1..p.n() {
                    for c in 1..=r {
                        let delta = q.d(r, c) as i64 - p.d(r, c) as i64;
                        if delta != 0 {
                            prop_assert_eq!((r, c), (i, j));
                            prop_assert_eq!(delta, if add { 1 } else { -1 });
                            diff += 1;
                        }
                    }
                }
                prop_assert_eq!(diff, 1);
                prop_assert_eq!(q.degree(i) as i64 - p.degree(i) as i64, if add { 1 } else { -1 });
                let back = q.neighbors(i, step.opposite());
                prop_assert!(back.iter().any(|(jj, pp)| *jj == j && *pp == p));
            }
        }
    }

    #[test]
    fn affine_neighbors_move_one_periodic_class(p in affine_pattern(), add in any::<bool>()) {
        let step = if add { Step::Add } else { Step::Remove };
        let n = p.n() as i64;
        for i in 1..=n {
            for (j, q) in p.neighbors(i, step) {
                prop_assert_eq!(q.size() as i64 - p.size() as i64, if add { 1 } else { -1 });
                for r in i - 8..=i + 8 {
                    for c in r - 8..=r {
                        let delta = q.d(r, c) as i64 - p.d(r, c) as i64;
                        let same_class = (r - i).rem_euclid(n) == 0 && r - i == c - j;
                        prop_assert_eq!(delta != 0, same_class);
                    }
                }
                let mut dd = q.degrees();
                let k = i.rem_euclid(n) as usize;
                dd[k] = (dd[k] as i64 - if add { 1 } else { -1 }) as u32;
                prop_assert_eq!(dd, p.degrees());
            }
        }
    }

    #[test]
    fn grid_round_trip(p in affine_pattern()) {
        prop_assert_eq!(from_lambda_grid(&to_lambda_grid(&p)).unwrap(), p);
    }
}
