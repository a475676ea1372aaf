//! Acceptance criteria for the library, one PASS/FAIL line each.
//!
//! Runs without the libtest harness so the report is always shown:
//! `cargo test -p schreierkit --test acceptance`. Exits nonzero if any
//! criterion fails.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use schreierkit::graphs::is_induced_cycle;
use schreierkit::rschreier::{derived_subgroup, DEFAULT_MAX_INDEX};
use schreierkit::tietze::simplify_observed;
use schreierkit::twin::{audit_relators, minimal_by_elimination};
use schreierkit::{
    abelian_invariants, as_racg, commutator_free, is_chordal, minimal_presentation, simplify, smith_normal_form,
    theorem1_presentation, twin_group, AbelianInvariants, Chordality, CommutationGraph, IntMatrix, Presentation,
    RacgContext, SimplificationBudget, Word,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn derived(n: usize) -> Presentation {
    derived_subgroup(&twin_group(n).unwrap(), DEFAULT_MAX_INDEX)
        .unwrap()
        .presentation
}

fn shape(p: &Presentation) -> (usize, usize) {
    (p.generator_count(), p.relators().len())
}

fn rank_of_commutator_subgroup() -> Outcome {
    for n in 3..=8 {
        let inv = abelian_invariants(&derived(n));
        ensure(inv == AbelianInvariants::free(2 * n - 5), || format!("n = {n}: got {inv}"))?;
    }
    Ok("TW_n' abelianizes to Z^(2n-5) for n = 3..8".into())
}

fn simplification_shapes() -> Outcome {
    let expected = [(2, (0, 0)), (3, (1, 0)), (4, (3, 0)), (5, (5, 0))];
    for (n, want) in expected {
        let out = simplify(&derived(n), SimplificationBudget::default());
        ensure(!out.budget_exhausted, || format!("n = {n}: budget exhausted"))?;
        let got = shape(&out.presentation);
        ensure(got == want, || format!("n = {n}: got {got:?}, want {want:?}"))?;
    }
    Ok("free of ranks 0, 1, 3, 5 with no relators for n = 2..5".into())
}

fn beta_relators_hold() -> Outcome {
    let mut total = 0;
    for m in 1..=6 {
        let audit = audit_relators(&theorem1_presentation(m).unwrap(), m).unwrap();
        ensure(audit.all_hold(), || format!("m = {m}: {audit:?}"))?;
        total += audit.total;
    }
    Ok(format!("{total} relators trivial under rewriting and the Tits representation, m = 1..6"))
}

fn named(p: &Presentation, letters: &[(&str, i32)]) -> Word {
    let signed: Vec<i32> = letters
        .iter()
        .map(|&(name, e)| e * p.generator_index(name).unwrap_or_else(|| panic!("missing {name}")) as i32)
        .collect();
    Word::from_signed(&signed).unwrap()
}

fn minimal_presentation_m4() -> Outcome {
    let p = minimal_presentation(4).unwrap();
    ensure(shape(&p) == (7, 2), || format!("shape {:?}", shape(&p)))?;
    let long = named(
        &p,
        &[
            ("beta_0(1)", -1),
            ("beta_0(2)", -1),
            ("beta_1(4)", 1),
            ("beta_0(2)", 1),
            ("beta_0(1)", 1),
            ("beta_1(2)", -1),
            ("beta_1(4)", -1),
            ("beta_1(2)", 1),
        ],
    );
    let comm = named(&p, &[("beta_0(1)", 1), ("beta_0(4)", 1), ("beta_0(1)", -1), ("beta_0(4)", -1)]);
    let want: BTreeSet<Word> = [long.relator_key(), comm.relator_key()].into();
    let got: BTreeSet<Word> = p.relators().iter().map(Word::relator_key).collect();
    ensure(got == want, || format!("relators {:?}", p.relators()))?;
    let inv = abelian_invariants(&p);
    ensure(inv == AbelianInvariants::free(7), || format!("abelianization {inv}"))?;
    let audit = audit_relators(&p, 4).unwrap();
    ensure(audit.all_hold(), || format!("{audit:?}"))?;
    Ok("7 generators, the expected 2 relators, abelianization Z^7".into())
}

fn freeness_threshold() -> Outcome {
    for n in 2..=12 {
        let tw = twin_group(n).unwrap();
        let free = commutator_free(&tw).unwrap();
        ensure(free == (n <= 5), || format!("n = {n}: commutator_free = {free}"))?;
        if let Chordality::NotChordal(cycle) = is_chordal(&as_racg(&tw).unwrap()) {
            let set: BTreeSet<usize> = cycle.iter().copied().collect();
            ensure(set == BTreeSet::from([1, 2, 4, 5]), || format!("n = {n}: witness {cycle:?}"))?;
        }
    }
    Ok("commutator subgroup free iff n <= 5 (n = 2..12), witness square on {1, 2, 4, 5}".into())
}

fn nielsen_schreier_count() -> Outcome {
    for n in 3..=8u32 {
        let d = derived_subgroup(&twin_group(n as usize).unwrap(), DEFAULT_MAX_INDEX).unwrap();
        let index = 1usize << (n - 1);
        let want = 1 + index * (n as usize - 2);
        ensure(d.table.n_cosets() == index, || format!("n = {n}: index {}", d.table.n_cosets()))?;
        let got = d.presentation.generator_count();
        ensure(got == want, || format!("n = {n}: {got} Schreier generators, want {want}"))?;
    }
    Ok("1 + 2^(n-1)(n-2) Schreier generators for n = 3..8".into())
}

// Words trivial by construction: u · v · v⁻¹ · u⁻¹ with a commuting pair
// inserted, or a relator conjugated.
fn trivial_word(rng: &mut ChaCha8Rng, g: &CommutationGraph) -> Word {
    let k = g.vertex_count();
    let rand_word = |rng: &mut ChaCha8Rng, len: usize| Word::from_gens(&(0..len).map(|_| rng.gen_range(1..=k)).collect::<Vec<_>>());
    let len = rng.gen_range(0..=4);
    let u = rand_word(rng, len);
    let core = match g.edges() {
        edges if !edges.is_empty() && rng.gen_bool(0.5) => {
            let (a, b) = edges[rng.gen_range(0..edges.len())];
            Word::from_gens(&[a, b, a, b])
        }
        _ => {
            let len = rng.gen_range(1..=4);
            let v = rand_word(rng, len);
            v.concat(&Word::new(v.letters().iter().rev().copied().collect()))
        }
    };
    u.concat(&core).concat(&Word::new(u.letters().iter().rev().copied().collect()))
}

fn random_graph(rng: &mut ChaCha8Rng) -> CommutationGraph {
    let k = rng.gen_range(1..=7);
    let mut g = CommutationGraph::new(k);
    for a in 1..=k {
        for b in a + 1..=k {
            if rng.gen_bool(0.4) {
                g.add_edge(a, b);
            }
        }
    }
    g
}

fn racg_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let (mut trivial, mut total) = (0, 0);
    for _ in 0..12_000 {
        let g = random_graph(&mut rng);
        let k = g.vertex_count();
        let w = if rng.gen_bool(0.3) {
            trivial_word(&mut rng, &g)
        } else {
            let len = rng.gen_range(0..=20);
            let letters: Vec<i32> = (0..len)
                .map(|_| {
                    let x = rng.gen_range(1..=k) as i32;
                    if rng.gen_bool(0.2) { -x } else { x }
                })
                .collect();
            Word::from_signed(&letters).unwrap()
        };
        let ctx = RacgContext::new(g);
        let a = ctx.is_identity(&w).unwrap();
        let b = ctx.tits_matrix(&w).unwrap().is_identity();
        ensure(a == b, || format!("word {w} on {:?}: deletion {a}, Tits {b}", ctx.graph().edges()))?;
        trivial += usize::from(a);
        total += 1;
    }
    ensure(trivial >= 1000, || format!("only {trivial} trivial words"))?;
    Ok(format!("{total} random words ({trivial} trivial) agree with the Tits representation"))
}

fn det(m: &[Vec<BigInt>]) -> BigInt {
    // Laplace expansion along the first row; inputs are at most 5x5.
    if m.is_empty() {
        return BigInt::from(1);
    }
    let mut acc = BigInt::zero();
    for c in 0..m.len() {
        if m[0][c].is_zero() {
            continue;
        }
        let minor: Vec<Vec<BigInt>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = &m[0][c] * det(&minor);
        if c % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|s| s.count_ones() as usize == k)
        .map(|s| (0..n).filter(|&i| s >> i & 1 == 1).collect())
        .collect()
}

// Invariant factors from determinantal divisors: d_k = gcd of k x k minors,
// s_k = d_k / d_{k-1}.
fn snf_by_minors(a: &[Vec<BigInt>], rows: usize, cols: usize) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut prev = BigInt::from(1);
    for k in 1..=rows.min(cols) {
        let mut d = BigInt::zero();
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let sub: Vec<Vec<BigInt>> = rs.iter().map(|&r| cs.iter().map(|&c| a[r][c].clone()).collect()).collect();
                d = d.gcd(&det(&sub));
            }
        }
        if d.is_zero() {
            out.resize(rows.min(cols), BigInt::zero());
            return out;
        }
        out.push(&d / &prev);
        prev = d;
    }
    out
}

fn snf_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5f5f);
    let cases = 1500;
    for _ in 0..cases {
        let rows = rng.gen_range(1..=5);
        let cols = rng.gen_range(1..=5);
        let sparse = rng.gen_bool(0.3);
        let a: Vec<Vec<i64>> = (0..rows)
            .map(|_| {
                (0..cols)
                    .map(|_| if sparse && rng.gen_bool(0.6) { 0 } else { rng.gen_range(-9..=9) })
                    .collect()
            })
            .collect();
        let big: Vec<Vec<BigInt>> = a.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let got = smith_normal_form(&IntMatrix::from_rows(&a));
        let want = snf_by_minors(&big, rows, cols);
        ensure(got == want, || format!("{a:?}: got {got:?}, want {want:?}"))?;
        ensure(got.iter().all(|d| !d.is_negative()), || format!("{a:?}: negative factor"))?;
    }
    Ok(format!("{cases} random matrices up to 5x5 match determinantal divisors"))
}

fn graph_from_mask(n: usize, mask: u32) -> CommutationGraph {
    let mut g = CommutationGraph::new(n);
    let mut bit = 0;
    for a in 1..=n {
        for b in a + 1..=n {
            if mask >> bit & 1 == 1 {
                g.add_edge(a, b);
            }
            bit += 1;
        }
    }
    g
}

// A vertex subset induces a cycle iff it has at least 4 vertices, each of
// induced degree 2, and is connected.
fn has_long_induced_cycle(g: &CommutationGraph) -> bool {
    let n = g.vertex_count();
    (0u32..1 << n).filter(|s| s.count_ones() >= 4).any(|s| {
        let vs: Vec<usize> = (1..=n).filter(|&v| s >> (v - 1) & 1 == 1).collect();
        let deg2 = vs.iter().all(|&v| vs.iter().filter(|&&u| g.has_edge(u, v)).count() == 2);
        if !deg2 {
            return false;
        }
        let mut seen = vec![vs[0]];
        let mut stack = vec![vs[0]];
        while let Some(v) = stack.pop() {
            for &u in &vs {
                if g.has_edge(u, v) && !seen.contains(&u) {
                    seen.push(u);
                    stack.push(u);
                }
            }
        }
        seen.len() == vs.len()
    })
}

fn chordality_oracle() -> Outcome {
    let mut graphs = 0;
    for n in 0..=6usize {
        let pairs = n * n.saturating_sub(1) / 2;
        for mask in 0u32..1 << pairs {
            let g = graph_from_mask(n, mask);
            let brute = !has_long_induced_cycle(&g);
            match is_chordal(&g) {
                Chordality::Chordal(_) => ensure(brute, || format!("n = {n}, edges {:?}: missed a cycle", g.edges()))?,
                Chordality::NotChordal(c) => {
                    ensure(!brute, || format!("n = {n}, edges {:?}: spurious cycle", g.edges()))?;
                    ensure(is_induced_cycle(&g, &c), || format!("bad witness {c:?}"))?;
                }
            }
            graphs += 1;
        }
    }
    Ok(format!("all {graphs} labelled graphs on <= 6 vertices agree with exhaustive search"))
}

fn invariants_preserved() -> Outcome {
    let mut steps = 0;
    for n in 2..=7 {
        let p = derived(n);
        let want = abelian_invariants(&p);
        let mut bad = None;
        simplify_observed(&p, SimplificationBudget::default(), |q| {
            steps += 1;
            if bad.is_none() && abelian_invariants(q) != want {
                bad = Some(shape(q));
            }
        });
        ensure(bad.is_none(), || format!("n = {n}: invariants changed at {bad:?}"))?;
    }
    for m in 1..=6 {
        let want = AbelianInvariants::free(2 * m - 1);
        let mut bad = None;
        let out = minimal_by_elimination(m, |q| {
            steps += 1;
            if bad.is_none() && abelian_invariants(q) != want {
                bad = Some(shape(q));
            }
        })
        .unwrap();
        ensure(bad.is_none(), || format!("m = {m}: invariants changed at {bad:?}"))?;
        ensure(shape(&out).0 == 2 * m - 1, || format!("m = {m}: ended at {:?}", shape(&out)))?;
    }
    Ok(format!("abelian invariants fixed across {steps} Tietze steps"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("commutator subgroup rank", rank_of_commutator_subgroup),
        ("simplified presentations", simplification_shapes),
        ("beta presentation relators", beta_relators_hold),
        ("minimal presentation for m = 4", minimal_presentation_m4),
        ("freeness threshold", freeness_threshold),
        ("Nielsen-Schreier count", nielsen_schreier_count),
        ("word problem vs Tits representation", racg_oracle),
        ("Smith normal form vs minors", snf_oracle),
        ("chordality vs exhaustive search", chordality_oracle),
        ("invariants under Tietze moves", invariants_preserved),
    ];
    let mut failed = Vec::new();
    for (name, f) in criteria {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(why) => {
                println!("FAIL  {name}: {why}");
                failed.push(name);
            }
        }
    }
    if failed.is_empty() {
        println!("acceptance: all {} criteria passed", criteria.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed {failed:?}");
        ExitCode::FAILURE
    }
}
