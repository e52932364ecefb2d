//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//!
//! Run with `cargo test -p tangle-cli --test acceptance`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tangle_core::{
    braid_to_moves, braid_to_psl2, central_power, delta, delta_squared, invariant_of_word, positivize, random,
    shortest_untangle, untangle_moves, word_to_psl2, BraidWord, MoveWord, ProjRat, Psl2Elem,
};

type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(limit: Duration, started: Instant) -> Check {
    let took = started.elapsed();
    ensure(took < limit, || format!("took {took:?}, limit {limit:?}"))
}

fn q(s: &str) -> ProjRat {
    s.parse().unwrap()
}

fn mw(s: &str) -> MoveWord {
    s.parse().unwrap()
}

fn bw(s: &str) -> BraidWord {
    s.parse().unwrap()
}

/// The untangling of 146/57 as displayed: every value shown and the block labels.
fn example_reproduction() -> Check {
    let started = Instant::now();
    let out = tangle_cli::run(["tangle", "steps", "146/57"]);
    ensure(out.code == 0, || format!("exit {}: {}", out.code, out.stderr))?;
    let lines: Vec<&str> = out.stdout.lines().collect();
    ensure(lines.first() == Some(&"146/57"), || format!("first line {:?}", lines.first()))?;

    let trace: Vec<(&str, &str)> =
        lines[1..lines.len() - 1].iter().map(|l| l.split_once(' ').expect("move and value")).collect();
    ensure(trace.len() == 25, || format!("{} moves, expected 25", trace.len()))?;

    let displayed = [
        "146/57", "-57/146", "89/146", "-146/89", "-57/89", "32/89", "-89/32", "-57/32", "-25/32", "7/32", "-32/7",
        "3/7", "-7/3", "2/3", "-3/2", "1/2", "-2", "0",
    ];
    let values: Vec<&str> = std::iter::once("146/57").chain(trace.iter().map(|(_, v)| *v)).collect();
    // displayed values appear in order; anything else is strictly inside a run of T's
    let mut shown = displayed.iter().peekable();
    for (i, v) in values.iter().enumerate() {
        if shown.peek() == Some(&v) {
            shown.next();
            continue;
        }
        let inside_run = i < trace.len() && trace[i - 1].0 == "T" && trace[i].0 == "T";
        ensure(inside_run, || format!("value {v} at position {i} is neither displayed nor inside a T-run"))?;
    }
    ensure(shown.peek().is_none(), || format!("displayed value {:?} never reached", shown.peek()))?;
    for (a, b) in values.iter().zip(&values[1..]) {
        let (a, b) = (q(a), q(b));
        ensure(b == a.neg_recip() || b == a.add_int(1), || format!("{a} -> {b} is not a single move"))?;
    }

    let arrows = lines.last().unwrap();
    let labels: Vec<&str> =
        arrows.split(' ').filter_map(|t| t.strip_prefix('-').and_then(|t| t.strip_suffix("->"))).collect();
    let expected = ["R", "T", "R", "T^2", "R", "T^3", "R", "T^5", "R", "T^3", "R", "T^2", "R", "T^2"];
    ensure(labels == expected, || format!("block labels {labels:?}"))?;
    let moves: String = trace.iter().map(|(m, _)| *m).collect();
    ensure(moves == "RTRTTRTTTRTTTTTRTTTRTTRTT", || format!("moves {moves}"))?;
    within(Duration::from_secs(1), started)
}

fn round_trip_untangling() -> Check {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x7a6e_0001);
    for i in 0..10_000 {
        let w = random::move_word(&mut rng, 200, true);
        let x = invariant_of_word(&w);
        let solution = untangle_moves(&x);
        ensure(solution.is_positive(), || format!("word {i}: solution has inverses"))?;
        let total = w.concat(&solution);
        ensure(invariant_of_word(&total).is_zero(), || format!("word {i} ({w}) does not untangle"))?;
    }
    within(Duration::from_secs(10), started)
}

fn group_action_law() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7a6e_0002);
    for i in 0..1_000 {
        let a = random::psl2_elem(&mut rng, 40);
        let b = random::psl2_elem(&mut rng, 40);
        let x = random::projrat(&mut rng, 10_000);
        let lhs = a.mul(&b).moebius(&x);
        let rhs = a.moebius(&b.moebius(&x));
        ensure(lhs == rhs, || format!("triple {i}: ({a})({b}) at {x}: {lhs} != {rhs}"))?;
    }
    Ok(())
}

fn presentation_relations() -> Check {
    let rr = word_to_psl2(&mw("RR"));
    let trtrtr = word_to_psl2(&mw("TRTRTR"));
    ensure(rr == Psl2Elem::identity(), || format!("RR = {rr}"))?;
    ensure(trtrtr == Psl2Elem::identity(), || format!("TRTRTR = {trtrtr}"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x7a6e_0003);
    for _ in 0..100 {
        let x = random::projrat(&mut rng, 1_000_000);
        ensure(rr.moebius(&x) == x && trtrtr.moebius(&x) == x, || format!("{x} moved"))?;
    }
    Ok(())
}

fn braid_bridge() -> Check {
    ensure(braid_to_psl2(&bw("aba")) == braid_to_psl2(&bw("bab")), || "braid relation fails".into())?;
    ensure(braid_to_psl2(&delta_squared()).is_identity(), || "Δ² is not the identity".into())?;
    let delta_image = braid_to_psl2(&delta());
    let mut rng = ChaCha8Rng::seed_from_u64(0x7a6e_0004);
    for _ in 0..100 {
        let x = random::projrat(&mut rng, 1_000_000);
        ensure(delta_image.moebius(&x) == x.neg_recip(), || format!("Δ·{x} != -1/{x}"))?;
    }
    for i in 0..1_000 {
        let b = random::braid_word(&mut rng, 60, true);
        ensure(braid_to_psl2(&b) == word_to_psl2(&braid_to_moves(&b)), || format!("braid {i} ({b})"))?;
    }
    Ok(())
}

fn positivization() -> Check {
    ensure(positivize(&bw("A")) == bw("baaba"), || "σ₁⁻¹ replacement".into())?;
    ensure(positivize(&bw("B")) == bw("abbab"), || "σ₂⁻¹ replacement".into())?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x7a6e_0005);
    for i in 0..1_000 {
        let b = random::braid_word(&mut rng, 60, true);
        let p = positivize(&b);
        ensure(p.is_positive(), || format!("braid {i}: output has inverses"))?;
        ensure(p.len() == b.len() + 4 * b.inverse_count(), || format!("braid {i}: length {}", p.len()))?;
        ensure(braid_to_psl2(&p) == braid_to_psl2(&b), || format!("braid {i}: image changed"))?;
    }
    Ok(())
}

fn oracle_agreement() -> Check {
    for p in -7i64..=7 {
        for d in 0i64..=7 {
            let Ok(x) = ProjRat::new(p, d) else { continue };
            let best = shortest_untangle(&x, 20).ok_or_else(|| format!("BFS found nothing for {x}"))?;
            ensure(invariant_of_word_from(&x, &best).is_zero(), || format!("BFS word invalid for {x}"))?;
            let main = untangle_moves(&x);
            ensure(invariant_of_word_from(&x, &main).is_zero(), || format!("solver word invalid for {x}"))?;
            ensure(main.len() >= best.len(), || format!("{x}: solver {} < BFS {}", main.len(), best.len()))?;
        }
    }
    Ok(())
}

fn invariant_of_word_from(x: &ProjRat, w: &MoveWord) -> ProjRat {
    tangle_core::tangle::apply_word(x, w)
}

fn stabilizer_characterization() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7a6e_0006);
    let trt = word_to_psl2(&mw("TRT"));
    let mut fixed = 0;
    for i in 0..1_000 {
        // a third are TRT powers times a conjugate of R², all fixing 0, so both outcomes occur
        let a = if i % 3 == 0 {
            let k: i32 = rand::Rng::gen_range(&mut rng, -50..=50);
            let base = if k < 0 { trt.inverse() } else { trt.clone() };
            let power = (0..k.unsigned_abs()).fold(Psl2Elem::identity(), |acc, _| acc.mul(&base));
            let g = random::psl2_elem(&mut rng, 20);
            power.mul(&g.mul(&word_to_psl2(&mw("RR"))).mul(&g.inverse()))
        } else {
            random::psl2_elem(&mut rng, 30)
        };
        let present = a.stab0_data().is_some();
        let fixes = a.moebius(&ProjRat::zero()).is_zero();
        let b_zero = a.entries()[1].to_string() == "0";
        ensure(present == fixes && fixes == b_zero, || format!("element {i} ({a})"))?;
        fixed += usize::from(fixes);
    }
    ensure(fixed >= 300, || format!("only {fixed} stabilizer samples"))?;
    let k = trt.stab0_data().ok_or("TRT does not fix 0")?;
    ensure(k.magnitude().to_string() == "1", || format!("TRT gives k = {k}"))?;
    ensure(central_power(&delta_squared()) == Ok(Some(1)), || "Δ² central power".into())
}

type Criterion = (&'static str, fn() -> Check);

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("example reproduction: steps 146/57", example_reproduction),
        ("round-trip untangling of 10,000 random words", round_trip_untangling),
        ("group-action law on 1,000 triples", group_action_law),
        ("presentation relations r² = (tr)³ = id", presentation_relations),
        ("braid bridge B₃ → PSL₂(ℤ)", braid_bridge),
        ("positivization of 1,000 braid words", positivization),
        ("BFS oracle agreement for |p|, q <= 7", oracle_agreement),
        ("stabilizer of 0 characterization", stabilizer_characterization),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let result = check();
        let took = started.elapsed();
        match result {
            Ok(()) => println!("PASS [{}] {name} ({took:.2?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL [{}] {name} ({took:.2?}): {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
