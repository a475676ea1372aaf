//! Reidemeister–Schreier rewriting for kernels of parity maps onto
//! elementary abelian 2-groups.
//!
//! The quotient sends each generator to its own `Z/2` factor. Cosets are
//! parity vectors; the Schreier transversal is built breadth-first with
//! generators tried in ascending order, so the representative of the coset
//! with parity set `{i1 < ... < ik}` is the word `g_{i1} ... g_{ik}`.

use std::collections::{HashSet, VecDeque};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::words::{Letter, Word};

pub const DEFAULT_MAX_INDEX: usize = 1024;

#[derive(Clone, Debug)]
pub struct CosetTable {
    n_gens: usize,
    parity: Vec<u64>,
    action: Vec<Vec<usize>>,
    transversal: Vec<Word>,
}

impl CosetTable {
    pub fn n_cosets(&self) -> usize {
        self.parity.len()
    }

    pub fn n_gens(&self) -> usize {
        self.n_gens
    }

    /// Coset reached from `coset` by generator `gen` (1-based). Each
    /// generator acts as an involution, so `gen` and its inverse agree.
    pub fn act(&self, coset: usize, gen: usize) -> usize {
        self.action[coset][gen - 1]
    }

    pub fn transversal(&self, coset: usize) -> &Word {
        &self.transversal[coset]
    }

    pub fn transversals(&self) -> &[Word] {
        &self.transversal
    }

    /// Parity bitmask of a coset; bit `g-1` is generator `g`.
    pub fn parity_of_coset(&self, coset: usize) -> u64 {
        self.parity[coset]
    }

    pub fn coset_of_parity(&self, parity: u64) -> Option<usize> {
        self.parity.iter().position(|&p| p == parity)
    }

    /// Coset reached from the subgroup by reading `w`.
    pub fn trace(&self, w: &Word) -> usize {
        w.letters().iter().fold(0, |c, l| self.act(c, l.gen()))
    }
}

/// Parity bitmask of a word: bit `g-1` set iff `g` occurs an odd number of times.
pub fn parity(w: &Word) -> u64 {
    w.letters().iter().fold(0u64, |acc, l| acc ^ (1u64 << (l.gen() - 1)))
}

/// Coset table for the kernel of the exponent-sum-mod-2 map, with the
/// default index cap.
pub fn mod2_coset_table(p: &Presentation) -> Result<CosetTable> {
    mod2_coset_table_with_limit(p, DEFAULT_MAX_INDEX)
}

pub fn mod2_coset_table_with_limit(p: &Presentation, max_index: usize) -> Result<CosetTable> {
    let k = p.generator_count();
    for (ri, r) in p.relators().iter().enumerate() {
        for g in 1..=k {
            if r.exponent_sum(g) % 2 != 0 {
                return Err(Error::QuotientIllDefined { relator: ri, generator: g });
            }
        }
    }
    let index = 1u128 << k.min(127);
    if k >= 64 || index > max_index as u128 {
        return Err(Error::IndexTooLarge { index, limit: max_index });
    }
    let n = index as usize;

    let mut coset_of = vec![usize::MAX; n];
    let mut parity = Vec::with_capacity(n);
    let mut transversal = Vec::with_capacity(n);
    coset_of[0] = 0;
    parity.push(0u64);
    transversal.push(Word::empty());
    let mut queue = VecDeque::from([0usize]);
    while let Some(c) = queue.pop_front() {
        for g in 1..=k {
            let target = parity[c] ^ (1u64 << (g - 1));
            if coset_of[target as usize] == usize::MAX {
                coset_of[target as usize] = parity.len();
                parity.push(target);
                transversal.push(transversal[c].concat(&Word::from_gens(&[g])));
                queue.push_back(coset_of[target as usize]);
            }
        }
    }
    let action = parity
        .iter()
        .map(|&p| (1..=k).map(|g| coset_of[(p ^ (1u64 << (g - 1))) as usize]).collect())
        .collect();
    Ok(CosetTable {
        n_gens: k,
        parity,
        action,
        transversal,
    })
}

/// `S_{c,a} = (λ_c a)(λ_{c·a})⁻¹`, freely reduced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchreierGenerator {
    pub coset: usize,
    pub gen: usize,
    pub word: Word,
}

impl SchreierGenerator {
    /// Serialized name `S_<coset>_<gen>`.
    pub fn name(&self) -> String {
        format!("S_{}_{}", self.coset, self.gen)
    }
}

/// Freely nontrivial Schreier generators ordered by `(coset, gen)`; these
/// freely generate the kernel inside the free group.
pub fn schreier_generators(t: &CosetTable) -> Vec<SchreierGenerator> {
    let mut out = Vec::new();
    for c in 0..t.n_cosets() {
        for a in 1..=t.n_gens() {
            let word = t
                .transversal(c)
                .concat(&Word::from_gens(&[a]))
                .concat(&t.transversal(t.act(c, a)).invert())
                .free_reduce();
            if !word.is_empty() {
                out.push(SchreierGenerator { coset: c, gen: a, word });
            }
        }
    }
    out
}

/// Lookup from `(coset, gen)` to the 1-based position of a retained
/// Schreier generator.
#[derive(Clone, Debug)]
pub struct SchreierIndex {
    slots: Vec<Option<usize>>,
    n_gens: usize,
}

impl SchreierIndex {
    pub fn new(t: &CosetTable, gens: &[SchreierGenerator]) -> Self {
        let mut slots = vec![None; t.n_cosets() * t.n_gens()];
        for (i, s) in gens.iter().enumerate() {
            slots[s.coset * t.n_gens() + s.gen - 1] = Some(i + 1);
        }
        SchreierIndex {
            slots,
            n_gens: t.n_gens(),
        }
    }

    pub fn get(&self, coset: usize, gen: usize) -> Option<usize> {
        self.slots[coset * self.n_gens + gen - 1]
    }
}

/// Rewrites a word lying in the kernel as a word in Schreier symbols.
///
/// A positive letter `a` read at coset `c` contributes `S_{c,a}`; an inverse
/// letter `a⁻¹` contributes `S_{c',a}⁻¹` where `c'` is the coset after
/// reading it. Symbols that are freely trivial are omitted.
pub fn rewrite(t: &CosetTable, gens: &[SchreierGenerator], w: &Word) -> Result<Word> {
    rewrite_indexed(t, &SchreierIndex::new(t, gens), w)
}

pub fn rewrite_indexed(t: &CosetTable, index: &SchreierIndex, w: &Word) -> Result<Word> {
    let mut coset = 0;
    let mut out = Vec::new();
    for &l in w.letters() {
        let next = t.act(coset, l.gen());
        let at = if l.is_inverse() { next } else { coset };
        if let Some(s) = index.get(at, l.gen()) {
            out.push(Letter::new(s, l.is_inverse()));
        }
        coset = next;
    }
    if coset != 0 {
        return Err(Error::NotInSubgroup(w.to_string()));
    }
    Ok(Word::new(out))
}

/// Expands a word over Schreier symbols back into the ambient free group.
pub fn expand(gens: &[SchreierGenerator], w: &Word) -> Word {
    let mut out = Word::empty();
    for l in w.letters() {
        let s = &gens[l.gen() - 1].word;
        out = out.concat(&if l.is_inverse() { s.invert() } else { s.clone() });
    }
    out.free_reduce()
}

/// Everything produced by the rewriting stage.
#[derive(Clone, Debug)]
pub struct DerivedSubgroup {
    pub table: CosetTable,
    pub generators: Vec<SchreierGenerator>,
    pub presentation: Presentation,
}

/// Presentation of the parity kernel (the commutator subgroup for a
/// right-angled Coxeter group), before any simplification.
pub fn derived_subgroup_presentation(p: &Presentation) -> Result<Presentation> {
    Ok(derived_subgroup(p, DEFAULT_MAX_INDEX)?.presentation)
}

pub fn derived_subgroup(p: &Presentation, max_index: usize) -> Result<DerivedSubgroup> {
    let table = mod2_coset_table_with_limit(p, max_index)?;
    let generators = schreier_generators(&table);
    let index = SchreierIndex::new(&table, &generators);

    let pairs: Vec<(usize, usize)> = (0..p.relators().len())
        .flat_map(|r| (0..table.n_cosets()).map(move |c| (r, c)))
        .collect();
    let rewritten = pairs
        .par_iter()
        .map(|&(r, c)| {
            let conj = p.relators()[r].conjugate(table.transversal(c));
            rewrite_indexed(&table, &index, &conj).map(|w| w.cyclic_reduce())
        })
        .collect::<Result<Vec<_>>>()?;

    let mut seen = HashSet::new();
    let mut relators = Vec::new();
    for w in rewritten {
        if w.is_empty() {
            continue;
        }
        if seen.insert(w.relator_key()) {
            relators.push(w);
        }
    }
    let names = generators.iter().map(SchreierGenerator::name).collect();
    let presentation = Presentation::new(names, relators)?;
    Ok(DerivedSubgroup {
        table,
        generators,
        presentation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::twin_group;

    fn g(v: &[usize]) -> Word {
        Word::from_gens(v)
    }

    #[test]
    fn tw3_table() {
        let t = mod2_coset_table(&twin_group(3).unwrap()).unwrap();
        assert_eq!(t.n_cosets(), 4);
        assert_eq!(t.transversals(), &[g(&[]), g(&[1]), g(&[2]), g(&[1, 2])]);
        assert_eq!(mod2_coset_table(&twin_group(2).unwrap()).unwrap().n_cosets(), 2);
    }

    #[test]
    fn tw4_transversal_is_ascending() {
        let t = mod2_coset_table(&twin_group(4).unwrap()).unwrap();
        assert_eq!(t.n_cosets(), 8);
        let c = t.coset_of_parity(0b011).unwrap();
        assert_eq!(t.transversal(c), &g(&[1, 2]));
        for c in 0..t.n_cosets() {
            let tr = t.transversal(c).letters().iter().map(|l| l.gen()).collect::<Vec<_>>();
            assert!(tr.windows(2).all(|p| p[0] < p[1]));
            // Schreier property: prefixes are transversal words.
            for k in 0..tr.len() {
                assert!(t.transversals().contains(&g(&tr[..k])));
            }
        }
    }

    #[test]
    fn odd_exponent_sum_is_rejected() {
        let p = Presentation::with_numbered_generators("a", 1, vec![g(&[1, 1, 1])]).unwrap();
        assert!(matches!(
            mod2_coset_table(&p),
            Err(Error::QuotientIllDefined { relator: 0, generator: 1 })
        ));
    }

    #[test]
    fn index_cap_is_enforced() {
        let p = twin_group(5).unwrap();
        assert!(matches!(
            mod2_coset_table_with_limit(&p, 15),
            Err(Error::IndexTooLarge { index: 16, limit: 15 })
        ));
    }

    #[test]
    fn tw3_schreier_generators() {
        let t = mod2_coset_table(&twin_group(3).unwrap()).unwrap();
        let gens = schreier_generators(&t);
        assert_eq!(gens.len(), 5);
        let find = |c, a| gens.iter().find(|s| s.coset == c && s.gen == a);
        // lambda = t2, a = t1: (t2 t1)(t1 t2)^-1
        let s = find(2, 1).unwrap();
        assert_eq!(s.word, Word::from_signed(&[2, 1, -2, -1]).unwrap());
        assert!(find(0, 1).is_none());
        assert_eq!(find(1, 1).unwrap().word, g(&[1, 1]));
    }

    #[test]
    fn rewrite_examples() {
        let t = mod2_coset_table(&twin_group(3).unwrap()).unwrap();
        let gens = schreier_generators(&t);
        let idx = |c, a| gens.iter().position(|s| s.coset == c && s.gen == a).unwrap() + 1;

        let r = rewrite(&t, &gens, &g(&[1, 1])).unwrap();
        assert_eq!(r, g(&[idx(1, 1)]));

        // t2 (t1 t1) t2^-1 gives S_{t2,t1} S_{t1t2,t1}.
        let w = g(&[1, 1]).conjugate(&g(&[2]));
        let r = rewrite(&t, &gens, &w).unwrap();
        assert_eq!(r, g(&[idx(2, 1), idx(3, 1)]));
        assert_eq!(expand(&gens, &r), w);

        // The involution spelling t2 t1 t1 t2 picks up S_{t2,t2} as well.
        let w = g(&[2, 1, 1, 2]);
        let r = rewrite(&t, &gens, &w).unwrap();
        assert_eq!(r, g(&[idx(2, 1), idx(3, 1), idx(2, 2)]));
        assert_eq!(expand(&gens, &r), w);

        assert_eq!(rewrite(&t, &gens, &Word::empty()).unwrap(), Word::empty());
        assert!(matches!(rewrite(&t, &gens, &g(&[1])), Err(Error::NotInSubgroup(_))));
    }

    #[test]
    fn nielsen_schreier_count() {
        for n in 3..=8 {
            let t = mod2_coset_table(&twin_group(n).unwrap()).unwrap();
            assert_eq!(schreier_generators(&t).len(), 1 + (1 << (n - 1)) * (n - 2));
        }
    }

    #[test]
    fn transversal_and_generator_soundness() {
        let p = twin_group(6).unwrap();
        let t = mod2_coset_table(&p).unwrap();
        for c in 0..t.n_cosets() {
            for a in 1..=t.n_gens() {
                let w = t.transversal(c).concat(&g(&[a]));
                assert_eq!(parity(&w), parity(t.transversal(t.act(c, a))));
            }
        }
        for s in schreier_generators(&t) {
            assert_eq!(parity(&s.word), 0);
            assert_eq!(s.word, s.word.free_reduce());
        }
    }

    #[test]
    fn rewritten_relators_expand_to_conjugates() {
        let p = twin_group(5).unwrap();
        let t = mod2_coset_table(&p).unwrap();
        let gens = schreier_generators(&t);
        for r in p.relators() {
            for lambda in t.transversals() {
                let conj = r.conjugate(lambda);
                let rw = rewrite(&t, &gens, &conj).unwrap();
                assert_eq!(expand(&gens, &rw), conj);
            }
        }
    }

    #[test]
    fn derived_generator_names() {
        let d = derived_subgroup(&twin_group(3).unwrap(), DEFAULT_MAX_INDEX).unwrap();
        assert_eq!(d.presentation.generator_count(), 5);
        assert_eq!(d.presentation.generator_names()[0], "S_1_1");
        assert!(d.presentation.relators().iter().all(|r| !r.is_empty()));
    }
}
