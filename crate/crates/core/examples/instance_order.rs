//! Comparing generalizations in the instance order with bounded higher-order
//! matching. Results are proven, refuted, or unknown when fuel runs out.

use lambda_au::au::{less_general, match_bounded};
use lambda_au::kernel::{parse_term, Signature};

fn main() -> lambda_au::Result<()> {
    let sig = Signature::builtin();
    let pairs = [
        ("\\x:a.\\y:a. f(Z(x,y))", "\\x:a.\\y:a. f(x)"),
        ("\\x:a.\\y:a. f(R(x,y))", "\\x:a.\\y:a. f(R(R(x,y),R(x,y)))"),
        ("\\x:a.\\y:a. f(R(R(x,y),R(x,y)))", "\\x:a.\\y:a. f(R(x,y))"),
        ("\\x:a.\\y:a. Z(x,x)", "\\x:a.\\y:a. f(y)"),
        ("\\x:a. Z(f(x))", "\\x:a. f(f(a))"),
    ];
    for (q, t) in pairs {
        let query = parse_term(q, &sig)?;
        let target = parse_term(t, &sig)?;
        println!("{query}  ≤?  {target}");
        for fuel in [1, 3, 8] {
            println!("  fuel {fuel}: {}", match_bounded(&query, &target, fuel));
        }
    }

    let lo = parse_term("\\x:a.\\y:a. f(R(x,y))", &sig)?;
    let hi = parse_term("\\x:a.\\y:a. f(R(R(x,y),R(x,y)))", &sig)?;
    let up = less_general(&lo, &hi, 8).is_proven();
    let down = less_general(&hi, &lo, 8).is_proven();
    println!("strictly more general: {}", up && !down);
    Ok(())
}
