//! Parse terms with redexes and short arguments, print their η-long β-normal
//! forms, and compare up to α.

use std::collections::BTreeMap;

use lambda_au::kernel::{
    alpha_eq, beta_eta_normalize, eta_reduce, parse_expr, parse_term, parse_type, Ctx, Signature,
};

fn main() -> lambda_au::Result<()> {
    let sig = Signature::builtin().with_constant("k", parse_type("(a -> a) -> a")?);
    let inputs = [
        "\\x:a.\\y:a. f((\\w1:a.\\w2:a. w1) x y)",
        "\\x:a->a. k x",
        "k f",
        "(\\g:a->a. g (g a)) f",
        "\\x:a.\\y:a. Z(x, y)",
    ];
    for text in inputs {
        let (expr, free) = parse_expr(text, &sig, &BTreeMap::new())?;
        let ctx = Ctx {
            bound: &[],
            free: &free,
            sig: &sig,
        };
        let t = beta_eta_normalize(&expr, ctx)?;
        println!("{text}");
        println!("  normal : {t}  : {}", t.ty());
        println!("  η-short: {}", eta_reduce(&t));
        if !free.is_empty() {
            let vars: Vec<String> = free.iter().map(|(v, ty)| format!("{v} : {ty}")).collect();
            println!("  free   : {}", vars.join(", "));
        }
    }

    let t1 = parse_term("\\u:a.\\v:a. f(u)", &sig)?;
    let t2 = parse_term("\\x:a.\\y:a. f(x)", &sig)?;
    println!("{t1} =α {t2}: {}", alpha_eq(&t1, &t2));
    Ok(())
}
