//! Conjugated-commutator generators `β(i1,...,is; j)` of `TW_n'`, their
//! normal forms `β_p(j)`, and the explicit presentations of `TW_{m+2}'`
//! built from them.
//!
//! `β(i1,...,is; j) = t_{i1}...t_{is} (t_{j+1} t_j t_{j+1} t_j) t_{is}...t_{i1}`
//! and `β_p(j) = β(j-p, ..., j-1; j)`.

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use crate::abelian::{abelian_invariants, AbelianInvariants};
use crate::error::{Error, Result};
use crate::graphs::commutator_free;
use crate::presentation::{as_racg, twin_group, Presentation};
use crate::racg::RacgContext;
use crate::rschreier::derived_subgroup_presentation;
use crate::tietze::{simplify, SimplificationBudget};
use crate::words::Word;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BetaSymbol {
    prefix: Vec<usize>,
    j: usize,
}

impl BetaSymbol {
    /// `prefix` must be strictly increasing with entries in `1..j`.
    pub fn new(prefix: Vec<usize>, j: usize) -> Result<Self> {
        if j == 0 {
            return Err(Error::InvalidArgument("beta top index must be >= 1".into()));
        }
        let increasing = prefix.windows(2).all(|w| w[0] < w[1]);
        if !increasing || prefix.iter().any(|&i| i == 0 || i >= j) {
            return Err(Error::InvalidArgument(format!(
                "beta prefix {prefix:?} must be strictly increasing within 1..{j}"
            )));
        }
        Ok(BetaSymbol { prefix, j })
    }

    /// `β_p(j)`; requires `p < j`.
    pub fn normal(p: usize, j: usize) -> Result<Self> {
        if p >= j {
            return Err(Error::InvalidArgument(format!("beta_{p}({j}) needs p < j")));
        }
        Ok(BetaSymbol {
            prefix: (j - p..j).collect(),
            j,
        })
    }

    pub fn prefix(&self) -> &[usize] {
        &self.prefix
    }

    pub fn top(&self) -> usize {
        self.j
    }

    /// `Some(p)` when the prefix is exactly `j-p, ..., j-1`.
    pub fn normal_p(&self) -> Option<usize> {
        let p = self.prefix.len();
        (self.prefix.iter().copied().eq(self.j - p..self.j)).then_some(p)
    }

    /// Word in the generators of `TW_n`.
    pub fn word(&self, n: usize) -> Result<Word> {
        if n < 3 || self.j > n - 2 {
            return Err(Error::InvalidArgument(format!(
                "{self} needs n >= {} but n = {n}",
                self.j + 2
            )));
        }
        let j = self.j;
        let mut gens = self.prefix.clone();
        gens.extend([j + 1, j, j + 1, j]);
        gens.extend(self.prefix.iter().rev());
        Ok(Word::from_gens(&gens))
    }

    /// Drops every prefix entry `e` with `e + 1` absent from the prefix and
    /// `e <= j - 2` (conjugation by `t_e` is then trivial), which leaves the
    /// longest run of consecutive entries ending at `j - 1`.
    pub fn normal_form(&self) -> BetaSymbol {
        let mut prefix = self.prefix.clone();
        loop {
            let drop = prefix.iter().rposition(|&e| {
                e + 2 <= self.j && !prefix.contains(&(e + 1))
            });
            match drop {
                Some(i) => {
                    prefix.remove(i);
                }
                None => break,
            }
        }
        BetaSymbol { prefix, j: self.j }
    }
}

impl fmt::Display for BetaSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.normal_p() {
            Some(p) => write!(f, "beta_{p}({})", self.j),
            None => {
                let entries: Vec<String> = self.prefix.iter().map(usize::to_string).collect();
                write!(f, "beta({};{})", entries.join(","), self.j)
            }
        }
    }
}

pub fn beta_word(b: &BetaSymbol, n: usize) -> Result<Word> {
    b.word(n)
}

pub fn beta_normal_form(b: &BetaSymbol) -> BetaSymbol {
    b.normal_form()
}

fn check_m(m: usize) -> Result<()> {
    if m < 1 {
        return Err(Error::InvalidArgument(format!("m must be >= 1, got {m}")));
    }
    Ok(())
}

// 1-based position of beta_p(j) among beta_p(j), 0 <= p < j <= m, ordered by (j, p).
fn beta_index(p: usize, j: usize) -> usize {
    j * (j - 1) / 2 + p + 1
}

fn letter(p: usize, j: usize) -> Word {
    Word::from_gens(&[beta_index(p, j)])
}

/// Generators `β_p(j)`, `0 <= p < j <= m`, ordered by `(j, p)`.
pub fn theorem1_generators(m: usize) -> Vec<BetaSymbol> {
    (1..=m)
        .flat_map(|j| (0..j).map(move |p| BetaSymbol::normal(p, j).expect("p < j")))
        .collect()
}

/// The `m(m+1)/2`-generator presentation of `TW_{m+2}'`.
///
/// For `1 <= k <= j`, `j+2 <= t <= m`:
/// `β_{j-k}(j)` commutes with `β_{t-(j+l)}(t)` for each `l >= 3` leaving a
/// valid subscript, and `β_{t-k}(t) = β_{j-k}(j)⁻¹ β_{t-(j+1)}(t) β_{j-k}(j)`.
pub fn theorem1_presentation(m: usize) -> Result<Presentation> {
    check_m(m)?;
    let mut relators = Vec::new();
    for j in 1..=m {
        for t in j + 2..=m {
            for k in 1..=j {
                let x = letter(j - k, j);
                for l in 3..=t - j {
                    let y = letter(t - j - l, t);
                    relators.push(x.concat(&y).concat(&x.invert()).concat(&y.invert()));
                }
                let lhs = letter(t - k, t);
                let rhs = letter(t - j - 1, t).conjugate(&x.invert());
                relators.push(lhs.concat(&rhs.invert()));
            }
        }
    }
    let names = theorem1_generators(m).iter().map(BetaSymbol::to_string).collect();
    Ok(Presentation::from_parts(names, dedup(relators)))
}

fn dedup(relators: Vec<Word>) -> Vec<Word> {
    let mut seen = HashSet::new();
    relators
        .into_iter()
        .map(|w| w.cyclic_reduce())
        .filter(|w| !w.is_empty() && seen.insert(w.relator_key()))
        .collect()
}

/// Generators of the minimal presentation: `β_0(1)` and `β_0(j), β_1(j)`
/// for `2 <= j <= m`.
pub fn minimal_generators(m: usize) -> Vec<BetaSymbol> {
    theorem1_generators(m)
        .into_iter()
        .filter(|b| b.normal_p().is_some_and(|p| p <= 1))
        .collect()
}

/// The `(2m-1)`-generator presentation of `TW_{m+2}'`: every `β_p(t)` with
/// `p >= 2` is replaced by `X⁻¹ β_1(t) X`, `X = β_0(t-2) β_0(t-3) ... β_0(t-p)`.
pub fn minimal_presentation(m: usize) -> Result<Presentation> {
    check_m(m)?;
    let full = theorem1_presentation(m)?;
    let kept = minimal_generators(m);
    let pos = |b: &BetaSymbol| kept.iter().position(|k| k == b).expect("kept generator") + 1;
    let images: Vec<Word> = theorem1_generators(m)
        .iter()
        .map(|b| {
            let p = b.normal_p().expect("normal form");
            let t = b.top();
            if p <= 1 {
                return Word::from_gens(&[pos(b)]);
            }
            let conj: Vec<usize> = (2..=p)
                .map(|q| pos(&BetaSymbol::normal(0, t - q).expect("valid")))
                .collect();
            let x = Word::from_gens(&conj);
            let b1 = Word::from_gens(&[pos(&BetaSymbol::normal(1, t).expect("valid"))]);
            b1.conjugate(&x.invert())
        })
        .collect();
    let relators = full
        .relators()
        .iter()
        .map(|r| substitute_all(r, &images))
        .collect();
    let names = kept.iter().map(BetaSymbol::to_string).collect();
    Ok(Presentation::from_parts(names, dedup(relators)))
}

/// Reaches the minimal presentation from [`theorem1_presentation`] through
/// explicit Tietze eliminations: for each `t` and `p` from `t-1` down to 2,
/// `β_p(t)` is removed with `β_p(t) = β_0(t-p)⁻¹ β_{p-1}(t) β_0(t-p)`.
/// `observe` sees every intermediate presentation.
pub fn minimal_by_elimination(m: usize, mut observe: impl FnMut(&Presentation)) -> Result<Presentation> {
    let mut current = theorem1_presentation(m)?;
    observe(&current);
    for t in 3..=m {
        for p in (2..t).rev() {
            let idx = |b: BetaSymbol| {
                current
                    .generator_index(&b.to_string())
                    .expect("generator still present")
            };
            let target = idx(BetaSymbol::normal(p, t)?);
            let lower = idx(BetaSymbol::normal(p - 1, t)?);
            let conj = idx(BetaSymbol::normal(0, t - p)?);
            let defining = Word::from_gens(&[target])
                .concat(&Word::from_gens(&[lower]).invert().conjugate(&Word::from_gens(&[conj]).invert()))
                .relator_key();
            let ri = current
                .relators()
                .iter()
                .position(|r| r.relator_key() == defining)
                .ok_or_else(|| Error::InvalidArgument(format!("no defining relator for beta_{p}({t})")))?;
            current = crate::tietze::eliminate(&current, target, ri)?.presentation;
            observe(&current);
        }
    }
    let cleaned = crate::tietze::remove_redundant(&current);
    observe(&cleaned);
    Ok(cleaned)
}

fn substitute_all(w: &Word, images: &[Word]) -> Word {
    let mut out = Vec::new();
    for l in w.letters() {
        let img = &images[l.gen() - 1];
        if l.is_inverse() {
            out.extend_from_slice(img.invert().letters());
        } else {
            out.extend_from_slice(img.letters());
        }
    }
    Word::new(out).free_reduce()
}

/// Expands a word over β-named generators of `p` into `TW_n`.
pub fn expand_beta_word(symbols: &[BetaSymbol], w: &Word, n: usize) -> Result<Word> {
    let words = symbols.iter().map(|b| b.word(n)).collect::<Result<Vec<_>>>()?;
    Ok(substitute_all(w, &words))
}

/// Parses generator names of the form `beta_p(j)`.
pub fn parse_beta_name(name: &str) -> Option<BetaSymbol> {
    let rest = name.strip_prefix("beta_")?;
    let (p, rest) = rest.split_once('(')?;
    let j = rest.strip_suffix(')')?;
    BetaSymbol::normal(p.parse().ok()?, j.parse().ok()?).ok()
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub claim: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub m: usize,
    pub n: usize,
    pub rank: usize,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "TW_{}' (m = {}), expected rank {}", self.n, self.m, self.rank)?;
        for c in &self.checks {
            let mark = if c.passed { "PASS" } else { "FAIL" };
            writeln!(f, "  [{mark}] {}: {} ({})", c.name, c.claim, c.detail)?;
        }
        Ok(())
    }
}

pub const MAX_VERIFY_M: usize = 6;

/// Relator soundness result for one presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelatorAudit {
    pub total: usize,
    pub rewriting_identity: usize,
    pub matrix_identity: usize,
    pub disagreements: usize,
}

impl RelatorAudit {
    pub fn all_hold(&self) -> bool {
        self.rewriting_identity == self.total && self.matrix_identity == self.total && self.disagreements == 0
    }
}

/// Expands every relator of a β-named presentation into `TW_{m+2}` and
/// checks it with both word-problem engines.
pub fn audit_relators(p: &Presentation, m: usize) -> Result<RelatorAudit> {
    let n = m + 2;
    let ctx = RacgContext::new(as_racg(&twin_group(n)?)?);
    let symbols = p
        .generator_names()
        .iter()
        .map(|name| {
            parse_beta_name(name)
                .ok_or_else(|| Error::InvalidArgument(format!("generator `{name}` is not a beta symbol")))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut audit = RelatorAudit {
        total: p.relators().len(),
        rewriting_identity: 0,
        matrix_identity: 0,
        disagreements: 0,
    };
    for r in p.relators() {
        let w = expand_beta_word(&symbols, r, n)?;
        let a = ctx.is_identity(&w)?;
        let b = ctx.tits_matrix(&w)?.is_identity();
        audit.rewriting_identity += usize::from(a);
        audit.matrix_identity += usize::from(b);
        audit.disagreements += usize::from(a != b);
    }
    Ok(audit)
}

fn check(name: &str, claim: &str, passed: bool, detail: String) -> Check {
    Check {
        name: name.into(),
        claim: claim.into(),
        passed,
        detail,
    }
}

fn invariants_detail(inv: &AbelianInvariants) -> String {
    inv.to_string()
}

/// Recomputes the structural claims about `TW_{m+2}'` for `1 <= m <= 6`.
pub fn verify_paper_claims(m: usize) -> Result<VerificationReport> {
    check_m(m)?;
    if m > MAX_VERIFY_M {
        return Err(Error::InvalidArgument(format!("verification is bounded to m <= {MAX_VERIFY_M}")));
    }
    let n = m + 2;
    let rank = 2 * m - 1;
    let expected = AbelianInvariants::free(rank);
    let t1 = theorem1_presentation(m)?;
    let minimal = minimal_presentation(m)?;
    let tw = twin_group(n)?;
    let derived = derived_subgroup_presentation(&tw)?;
    let mut checks = Vec::new();

    let a1 = audit_relators(&t1, m)?;
    checks.push(check(
        "beta-relators",
        "every relator of the beta_p(j) presentation is trivial in TW_{m+2} (rewriting and Tits matrix)",
        a1.all_hold(),
        format!("{a1:?}"),
    ));
    let a2 = audit_relators(&minimal, m)?;
    checks.push(check(
        "minimal-relators",
        "every relator of the (2m-1)-generator presentation is trivial in TW_{m+2}",
        a2.all_hold(),
        format!("{a2:?}"),
    ));

    checks.push(check(
        "generator-counts",
        "m(m+1)/2 generators before, 2m-1 after eliminating beta_p(t), p >= 2",
        t1.generator_count() == m * (m + 1) / 2 && minimal.generator_count() == rank,
        format!("{} and {}", t1.generator_count(), minimal.generator_count()),
    ));

    for (name, p) in [("beta", &t1), ("minimal", &minimal), ("reidemeister-schreier", &derived)] {
        let inv = abelian_invariants(p);
        checks.push(check(
            &format!("abelianization-{name}"),
            "the abelianization of TW_{m+2}' is free abelian of rank 2m-1",
            inv == expected,
            invariants_detail(&inv),
        ));
    }

    let free = commutator_free(&tw)?;
    checks.push(check(
        "freeness",
        "TW_{m+2}' is free iff m <= 3 (chordal commutation graph)",
        free == (m <= 3),
        format!("chordal = {free}"),
    ));

    let simplified = simplify(&derived, SimplificationBudget::default());
    let zero = simplified.presentation.relators().is_empty();
    checks.push(check(
        "simplification",
        "Tietze simplification of the rewritten presentation reaches zero relators iff m <= 3",
        zero == (m <= 3),
        format!(
            "{} generators, {} relators",
            simplified.presentation.generator_count(),
            simplified.presentation.relators().len()
        ),
    ));

    Ok(VerificationReport { m, n, rank, checks })
}
