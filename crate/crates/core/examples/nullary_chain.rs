//! A certified chain of ever more specific generalizations of
//! λx.λy.f(x) ≜ λx.λy.f(y), starting from the least general pattern
//! generalization. Each step substitutes
//! Y ↦ λw1.λw2. Y(Y(w1,w2),Y(w1,w2)) and is refuted in reverse.

use lambda_au::au::pattern_lgg;
use lambda_au::kernel::{occ, Head};
use lambda_au::nullarity::{generate_chain, mu_occ, witness_problem, FragmentTag};
use lambda_au::Error;

fn main() -> lambda_au::Result<()> {
    let (sig, p) = witness_problem();
    let start = pattern_lgg(&p);
    for frag in [FragmentTag::LambdaAll, FragmentTag::LambdaSp] {
        let c = generate_chain(&p, &start, frag, 2, &sig, 8)?;
        println!("[{frag}] tightened {}", c.tightened.g);
        for (i, w) in c.elements.iter().enumerate() {
            let y = w
                .sigma1
                .domain()
                .find(|v| v.starts_with('Y'))
                .cloned()
                .unwrap_or_default();
            let n = occ(&Head::Free(y.clone()), &w.g);
            println!("  g{i}: {y} occurs {n} times");
            if n <= 3 {
                println!("      {}", w.g);
            }
        }
        for (i, s) in c.steps.iter().enumerate() {
            let r = &s.refutation;
            println!(
                "  g{} ≰ g{i}: {} ({} > {} occurrences)",
                i + 1,
                r.case_tag,
                r.n_next,
                r.n_prev
            );
        }
    }

    // The count grows as 2^(2^k) - 1, so long chains are refused up front.
    match generate_chain(&p, &start, FragmentTag::LambdaAll, 10, &sig, 8) {
        Err(Error::TooLarge(msg)) => println!("n = 10: {msg}"),
        other => println!("n = 10: {:?}", other.map(|c| c.elements.len())),
    }
    let c = generate_chain(&p, &start, FragmentTag::LambdaAll, 3, &sig, 8)?;
    let last = c.elements.last().expect("non-empty");
    let y = last
        .sigma1
        .domain()
        .find(|v| v.starts_with('Y'))
        .cloned()
        .unwrap_or_default();
    println!(
        "after g3 the next step would hold {} occurrences",
        mu_occ(&y, &last.g)
    );
    Ok(())
}
