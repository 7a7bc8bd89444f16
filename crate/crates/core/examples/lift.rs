//! Maximal positions of a term and its lifting: each maximal subterm is
//! replaced by a fresh variable applied to the outer binders.

use lambda_au::kernel::{eta_reduce, parse_term, subterm_at};
use lambda_au::nullarity::{core, lift, maximal_positions, witness_problem};

fn main() -> lambda_au::Result<()> {
    let (sig, _) = witness_problem();
    let terms = [
        "\\x:a.\\y:a. f(Z(\\w:a->a. x, x, \\w1:a->a.\\w2:a->a. y, f))",
        "\\x:a.\\y:a. f(Y(W(x,f(a)),W(f(a),y)))",
        "\\x:a.\\y:a. f(Z(x,y))",
    ];
    for text in terms {
        let t = parse_term(text, &sig)?;
        println!("{t}");
        for q in maximal_positions(&t, &sig)? {
            println!("  maximal {q}: {}", subterm_at(&t, &q)?);
        }
        let l = lift(&t, &sig)?;
        println!("  lifted  {}", l.term);
        println!("  η-short {}", eta_reduce(&l.term));
        for (h, ty, sub, q) in &l.fresh {
            println!("  {h} : {ty} replaces {sub} at {q}");
        }
        println!("  core    {}", core(&t, &sig)?);
    }
    Ok(())
}
