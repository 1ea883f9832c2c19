//! Subsequences along which `Σ_{i≤j} a_{k−i}/a_k ≤ j` stays nearly sharp,
//! for three model sequences.

use harnack_lab::analysis::sumdiv_subsequence;

fn main() -> harnack_lab::Result<()> {
    let horizon = 100_000;
    let families: [(&str, Box<dyn Fn(usize) -> f64>); 3] = [
        ("1/k", Box::new(|k| 1.0 / k as f64)),
        ("constant", Box::new(|_| 1.0)),
        ("squares", Box::new(|k| if (k as f64).sqrt().fract() == 0.0 { 1.0 } else { 0.0 })),
    ];
    for (name, f) in families {
        let a: Vec<f64> = (1..=horizon).map(f).collect();
        let res = sumdiv_subsequence(&a, 5)?;
        let tail: Vec<String> =
            (1..=5).map(|j| format!("{:.4}", res.tail_sup(j, horizon / 2).unwrap_or(f64::NAN))).collect();
        println!(
            "{name:<9} case {:?}, {} indices selected, tail sup per j = [{}]",
            res.case,
            res.subsequence_indices.len(),
            tail.join(", ")
        );
    }
    Ok(())
}
