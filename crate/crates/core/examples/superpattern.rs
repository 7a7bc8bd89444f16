//! Membership in the superpattern fragment, with the position and reason of
//! every violation.

use lambda_au::kernel::{parse_term, parse_type, Signature};
use lambda_au::superpattern::is_superpattern;

fn main() -> lambda_au::Result<()> {
    let sig = Signature::builtin().with_variable("K", parse_type("a -> a")?);
    let terms = [
        "\\x:a.\\y:a. Z",
        "\\x:a.\\y:a. Z(x,y)",
        "\\x:a.\\y:a. Z(R(x,y),K(x),K(P(x)),W,y)",
        "\\x:a.\\y:a. Z(x,x)",
        "\\x:a.\\y:a. Z(f(x),y)",
        "\\x:a.\\y:a. f(Y(W(x,H1(x,y)),W(H2(x,y),y)))",
        "\\x:a.\\y:a. Z(a, K(K(y)))",
        "\\x:a.\\y:(a->a)->a. Z(y, \\u:a. K(u))",
    ];
    for text in terms {
        let t = parse_term(text, &sig)?;
        println!("{t}: {}", is_superpattern(&t));
    }
    Ok(())
}
