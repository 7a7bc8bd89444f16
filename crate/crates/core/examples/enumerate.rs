//! Exhaustive enumeration of small generalizations, and which of them are
//! maximal in the instance order.

use lambda_au::au::{enumerate_generalizations, less_general};
use lambda_au::nullarity::witness_problem;
use lambda_au::superpattern::is_superpattern;

fn main() {
    let (_, p) = witness_problem();
    let all = enumerate_generalizations(&p, 5, 2);
    println!(
        "{} generalizations of size ≤ 5 with at most 2 variables",
        all.len()
    );
    for w in all.iter().take(12) {
        println!("  {}", w.g);
    }
    let sp: Vec<_> = all
        .iter()
        .filter(|w| is_superpattern(&w.g).is_member)
        .collect();
    println!("{} are superpatterns", sp.len());

    let small = enumerate_generalizations(&p, 3, 1);
    let maximal: Vec<_> = small
        .iter()
        .filter(|w| {
            !small.iter().any(|v| {
                less_general(&v.g, &w.g, 6).is_proven() && !less_general(&w.g, &v.g, 6).is_proven()
            })
        })
        .collect();
    println!("maximal among the {} of size ≤ 3:", small.len());
    for w in maximal {
        println!("  {}", w.g);
    }
}
