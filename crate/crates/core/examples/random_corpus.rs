//! Seeded random problems over a small signature: the lgg of each, checked,
//! and a β-expanded variant of the left side that normalizes back.

use lambda_au::au::{check_generalization, pattern_lgg};
use lambda_au::gen::{small_signature, TermGen};
use lambda_au::kernel::{alpha_eq, beta_eta_normalize, Ctx};

fn main() -> lambda_au::Result<()> {
    let seed = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(42);
    let mut gen = TermGen::new(seed, small_signature());
    for _ in 0..8 {
        let p = gen.aup(3);
        let w = pattern_lgg(&p);
        println!("{p}");
        println!("  lgg {}  ok={}", w.g, check_generalization(&w, &p)?);
        let e = gen.redexify(&p.left);
        let ctx = Ctx {
            bound: &[],
            free: &Default::default(),
            sig: gen.signature(),
        };
        let back = beta_eta_normalize(&e, ctx)?;
        println!(
            "  redex form {e}  normalizes back: {}",
            alpha_eq(&back, &p.left)
        );
    }
    Ok(())
}
