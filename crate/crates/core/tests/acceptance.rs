//! One line per acceptance criterion. Criterion 2 cannot be met as stated
//! (see the README's note on chain growth); its line reports FAIL and the
//! run checks the feasible prefix and the exact failure mode instead. Any
//! other failure makes the target exit non-zero.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::chain_counts;
use lambda_au::au::{
    check_generalization, enumerate_generalizations, is_pattern, less_general, match_bounded,
    pattern_lgg, GenWitness,
};
use lambda_au::gen::{decorate, small_signature, TermGen};
use lambda_au::golden;
use lambda_au::kernel::{alpha_eq, apply_subst, free_vars, occ, parse_term, renormalize, Head};
use lambda_au::nullarity::{
    generate_chain, is_pattern_derived, is_tight, tighten, witness_problem, FragmentTag,
    TightVerdict,
};
use lambda_au::superpattern::is_superpattern;
use lambda_au::Error;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn within(t: Instant, limit: Duration) -> Result<Duration, String> {
    let e = t.elapsed();
    if e < limit {
        Ok(e)
    } else {
        Err(format!("took {e:?}, limit {limit:?}"))
    }
}

fn golden_suite() -> Check {
    let t = Instant::now();
    let report = golden::run();
    let e = within(t, Duration::from_secs(5))?;
    let failed: Vec<&str> = report
        .cases
        .iter()
        .filter(|c| !c.passed)
        .map(|c| c.name)
        .collect();
    if !failed.is_empty() {
        return Err(format!("failed cases: {}", failed.join(", ")));
    }
    Ok(format!("{} cases in {e:?}", report.cases.len()))
}

fn verify_chain(frag: FragmentTag, n: usize) -> Result<Vec<u128>, String> {
    let (sig, p) = witness_problem();
    let c = generate_chain(&p, &pattern_lgg(&p), frag, n, &sig, 10).map_err(|e| e.to_string())?;
    let mut counts = Vec::new();
    for w in &c.elements {
        if !check_generalization(w, &p).map_err(|e| e.to_string())? {
            return Err(format!("{} does not generalize", w.g));
        }
        if frag == FragmentTag::LambdaSp && !is_superpattern(&w.g).is_member {
            return Err(format!("{} is not a superpattern", w.g));
        }
        counts.push(occ(&Head::Free("Y".into()), &w.g) as u128);
    }
    for (pair, step) in c.elements.windows(2).zip(&c.steps) {
        let fwd = apply_subst(&pair[0].g, &step.forward).map_err(|e| e.to_string())?;
        if !alpha_eq(&fwd, &pair[1].g) {
            return Err("forward substitution does not reproduce".into());
        }
        if match_bounded(&pair[1].g, &pair[0].g, 10).is_proven() {
            return Err(format!("reverse proven at step to {}", pair[1].g));
        }
        if step.refutation.n_next <= step.refutation.n_prev {
            return Err("refutation without growth".into());
        }
    }
    if counts != chain_counts(n) {
        return Err(format!("counts {counts:?}, oracle {:?}", chain_counts(n)));
    }
    Ok(counts)
}

// Returns (reported line, whether the documented failure mode held).
fn chain_certificate() -> (Check, bool) {
    let (sig, p) = witness_problem();
    let t = Instant::now();
    let mut notes = Vec::new();
    let mut mode_ok = true;
    for frag in [FragmentTag::LambdaAll, FragmentTag::LambdaSp] {
        match generate_chain(&p, &pattern_lgg(&p), frag, 10, &sig, 10) {
            Err(Error::TooLarge(_)) => {}
            other => {
                mode_ok = false;
                notes.push(format!(
                    "[{frag}] n=10 gave {:?}",
                    other.map(|c| c.elements.len())
                ));
            }
        }
        match verify_chain(frag, 3) {
            Ok(counts) => notes.push(format!("[{frag}] n=3 verified, occ {counts:?}")),
            Err(e) => {
                mode_ok = false;
                notes.push(format!("[{frag}] n=3: {e}"));
            }
        }
    }
    let expected_2n1: Vec<u128> = (0..=10)
        .scan(1u128, |n, _| {
            let cur = *n;
            *n = 2 * *n + 1;
            Some(cur)
        })
        .collect();
    let actual = chain_counts(4);
    mode_ok &= actual[..2] == expected_2n1[..2] && actual[2] != expected_2n1[2];
    if within(t, Duration::from_secs(10)).is_err() {
        mode_ok = false;
    }
    let line = format!(
        "n=10 refused: substituting the step everywhere yields occ {actual:?} = 2^(2^k)-1, \
         not 2n+1 {:?}; {}",
        &expected_2n1[..5],
        notes.join("; ")
    );
    (Err(line), mode_ok)
}

fn nullarity_property() -> Check {
    let (sig, p) = witness_problem();
    let t = Instant::now();
    let all = enumerate_generalizations(&p, 6, 2);
    let mut notes = Vec::new();
    for frag in [FragmentTag::LambdaAll, FragmentTag::LambdaSp] {
        let universe: Vec<&GenWitness> = all
            .iter()
            .filter(|w| frag == FragmentTag::LambdaAll || is_superpattern(&w.g).is_member)
            .collect();
        let derived: Vec<&&GenWitness> = universe
            .iter()
            .filter(|w| is_pattern_derived(&w.g, &p))
            .collect();
        let mut maximal = 0;
        for w in derived {
            let below = universe.iter().any(|h| {
                less_general(&w.g, &h.g, 8).is_proven() && !less_general(&h.g, &w.g, 8).is_proven()
            });
            if below {
                continue;
            }
            maximal += 1;
            let c = generate_chain(&p, w, frag, 1, &sig, 10)
                .map_err(|e| format!("[{frag}] {}: {e}", w.g))?;
            let next = &c.elements[1];
            if !check_generalization(next, &p).map_err(|e| e.to_string())? {
                return Err(format!("[{frag}] {} does not generalize", next.g));
            }
            let strict = less_general(&w.g, &next.g, 10).is_proven()
                && !less_general(&next.g, &w.g, 10).is_proven();
            if !strict {
                return Err(format!("[{frag}] {} not strictly below {}", next.g, w.g));
            }
        }
        if maximal == 0 {
            return Err(format!("[{frag}] no maximal pattern-derived element"));
        }
        notes.push(format!(
            "[{frag}] universe {}, {maximal} maximal, all improved",
            universe.len()
        ));
    }
    let e = within(t, Duration::from_secs(60))?;
    Ok(format!("{} in {e:?}", notes.join("; ")))
}

fn randomized_soundness() -> Check {
    let sig = small_signature();
    let t = Instant::now();
    let mut gen = TermGen::new(0x5eed, sig.clone());
    for i in 0..500 {
        let p = gen.aup(4);
        let w = pattern_lgg(&p);
        if !check_generalization(&w, &p).map_err(|e| e.to_string())? {
            return Err(format!("problem {i}: lgg of {p} does not verify"));
        }
        if !is_pattern(&w.g) || !is_superpattern(&w.g).is_member {
            return Err(format!("problem {i}: {} not a (super)pattern", w.g));
        }
    }
    for i in 0..1000 {
        let ty = gen.small_type();
        let t = gen.closed_term(&ty, 4);
        if renormalize(&t, &sig).map_err(|e| e.to_string())? != t {
            return Err(format!("term {i}: {t} not idempotent"));
        }
        let back = parse_term(&t.to_string(), &sig).map_err(|e| e.to_string())?;
        if !alpha_eq(&back, &t) {
            return Err(format!("term {i}: {t} does not round-trip"));
        }
    }
    let e = within(t, Duration::from_secs(30))?;
    Ok(format!("500 lggs, 1000 terms in {e:?}"))
}

fn tightening() -> Check {
    let (sig, p) = witness_problem();
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut tight = 0;
    for i in 0..100 {
        let d = decorate(&mut rng);
        let bound = free_vars(&d.witness.g).len() * 2;
        let out = tighten(&d.witness, &p, FragmentTag::LambdaAll, &sig, 8)
            .map_err(|e| format!("case {i} {}: {e}", d.witness.g))?;
        if out.rewrites.len() > bound {
            return Err(format!(
                "case {i}: {} rewrites, bound {bound}",
                out.rewrites.len()
            ));
        }
        if !check_generalization(&out.witness, &p).map_err(|e| e.to_string())? {
            return Err(format!("case {i}: {} lost generality", out.witness.g));
        }
        match is_tight(&out.witness, &p, FragmentTag::LambdaAll, 8) {
            TightVerdict::Tight => tight += 1,
            TightVerdict::Unknown => {}
            TightVerdict::NotTight { var, .. } => {
                return Err(format!(
                    "case {i}: {var} still removable in {}",
                    out.witness.g
                ))
            }
        }
    }
    if tight < 90 {
        return Err(format!("only {tight}/100 tight"));
    }
    Ok(format!("{tight}/100 tight"))
}

fn main() -> ExitCode {
    let mut unexpected = 0;
    let report = |n: usize, name: &str, r: &Check| match r {
        Ok(m) => println!("PASS  {n}. {name}: {m}"),
        Err(m) => println!("FAIL  {n}. {name}: {m}"),
    };
    let c1 = golden_suite();
    report(1, "worked examples", &c1);
    let (c2, mode_ok) = chain_certificate();
    report(2, "chain certificate", &c2);
    if !mode_ok {
        println!("      chain failure is not the documented one");
    }
    let c3 = nullarity_property();
    report(3, "no minimal complete set at size 6", &c3);
    let c4 = randomized_soundness();
    report(4, "randomized soundness", &c4);
    let c5 = tightening();
    report(5, "tightening", &c5);
    for r in [&c1, &c3, &c4, &c5] {
        unexpected += r.is_err() as usize;
    }
    unexpected += (!mode_ok) as usize;
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
