//! The stored monomial tables, rebuilt from cosets, against the engine on every residue class.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use zerowt::golden::monomial_table;
use zerowt::{datum, parse_class, ClassEngine, Weight};

fn residues(rank: usize, m: i64) -> impl Iterator<Item = Vec<i64>> {
    (0..m.pow(rank as u32)).map(move |mut n| {
        (0..rank)
            .map(|_| {
                let r = n % m;
                n /= m;
                r
            })
            .collect()
    })
}

fn derived_matches_engine(group: &str, class: &str, samples: usize, spread: i64) {
    let t = monomial_table(group).unwrap();
    let d = datum(group).unwrap();
    let e = ClassEngine::new(d.clone(), &parse_class(&d, class).unwrap(), None).unwrap();
    let m = t.modulus;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for res in residues(d.rank(), m) {
        for _ in 0..samples {
            let mu: Vec<i64> =
                res.iter().map(|&r| if r == 0 { m } else { r } + m * rng.gen_range(0..=spread)).collect();
            let want = e.trace(&Weight(mu.clone())).unwrap();
            assert_eq!(t.evaluate_derived(&mu).unwrap(), want, "{group} at {mu:?}");
        }
    }
}

#[test]
fn d4_every_coset() {
    derived_matches_engine("D4", "w0", 4, 5);
}

#[test]
fn f4_every_coset() {
    derived_matches_engine("F4", "w0", 4, 4);
}

#[test]
fn e6_every_coset() {
    derived_matches_engine("E6", "cox^4", 2, 3);
}

#[test]
fn e6_printed_rows_miss_three_lines() {
    let t = monomial_table("E6").unwrap();
    let want: Vec<Vec<i64>> = vec![
        vec![0, 1, 0, 1, 0, 0],
        vec![0, 1, 1, 2, 1, 0],
        vec![0, 2, 0, 2, 0, 0],
        vec![0, 2, 2, 1, 2, 0],
        vec![1, 2, 1, 1, 0, 0],
        vec![2, 1, 2, 2, 0, 0],
    ];
    assert_eq!(t.uncovered_cosets().unwrap(), want);
    for g in ["D4", "F4"] {
        assert!(monomial_table(g).unwrap().uncovered_cosets().unwrap().is_empty(), "{g}");
    }
}
