//! Word problem in right-angled Coxeter groups.
//!
//! Two independent routes: combinatorial deletion of commuting-separated
//! equal letters (with a canonical lexicographic representative of the
//! commutation class), and the integer Tits reflection representation.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::presentation::CommutationGraph;
use crate::words::{Letter, Word};

#[derive(Clone, Debug)]
pub struct RacgContext {
    graph: CommutationGraph,
}

impl RacgContext {
    pub fn new(graph: CommutationGraph) -> Self {
        RacgContext { graph }
    }

    pub fn graph(&self) -> &CommutationGraph {
        &self.graph
    }

    pub fn rank(&self) -> usize {
        self.graph.vertex_count()
    }

    fn commute(&self, a: usize, b: usize) -> bool {
        self.graph.has_edge(a, b)
    }

    fn positive_gens(&self, w: &Word) -> Result<Vec<usize>> {
        w.letters()
            .iter()
            .map(|l| {
                let g = l.gen();
                if g > self.rank() {
                    Err(Error::InvalidArgument(format!(
                        "letter {l} out of range for a group with {} generators",
                        self.rank()
                    )))
                } else {
                    Ok(g)
                }
            })
            .collect()
    }

    /// A geodesic word for `w`, namely the lexicographically least word of
    /// its commutation class. Equal group elements give equal outputs.
    pub fn normal_form(&self, w: &Word) -> Result<Word> {
        let gens = self.positive_gens(w)?;
        let reduced = self.delete_pairs(&gens);
        Ok(Word::from_gens(&self.lex_least(reduced)))
    }

    pub fn is_identity(&self, w: &Word) -> Result<bool> {
        let gens = self.positive_gens(w)?;
        Ok(self.delete_pairs(&gens).is_empty())
    }

    /// Word length of the element represented by `w`.
    pub fn length(&self, w: &Word) -> Result<usize> {
        Ok(self.delete_pairs(&self.positive_gens(w)?).len())
    }

    // Appending `s` to a reduced word either cancels the last `s` that is
    // followed only by letters commuting with it, or extends the word.
    fn delete_pairs(&self, gens: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = Vec::with_capacity(gens.len());
        for &s in gens {
            let mut cancel = None;
            for k in (0..out.len()).rev() {
                if out[k] == s {
                    cancel = Some(k);
                    break;
                }
                if !self.commute(out[k], s) {
                    break;
                }
            }
            match cancel {
                Some(k) => {
                    out.remove(k);
                }
                None => out.push(s),
            }
        }
        out
    }

    fn lex_least(&self, mut rest: Vec<usize>) -> Vec<usize> {
        let mut out = Vec::with_capacity(rest.len());
        while !rest.is_empty() {
            // Candidates are letters every earlier letter commutes with.
            let mut best: Option<usize> = None;
            for i in 0..rest.len() {
                let s = rest[i];
                let free = rest[..i].iter().all(|&t| self.commute(t, s));
                if free && best.is_none_or(|b| s < rest[b]) {
                    best = Some(i);
                }
            }
            let i = best.expect("the first letter is always a candidate");
            out.push(rest.remove(i));
        }
        out
    }

    /// Image of the `i`-th generator: `e_j ↦ e_j − 2B(i,j)e_i` with
    /// `B(i,i)=1`, `B(i,j)=0` for commuting pairs and `−1` otherwise.
    pub fn generator_matrix(&self, i: usize) -> Result<ReflectionMatrix> {
        self.tits_matrix(&Word::new(vec![Letter::pos(i)]))
    }

    /// Product of generator matrices in word order.
    pub fn tits_matrix(&self, w: &Word) -> Result<ReflectionMatrix> {
        let gens = self.positive_gens(w)?;
        let n = self.rank();
        let mut m = ReflectionMatrix::identity(n);
        let two = BigInt::from(2);
        for s in gens {
            let i = s - 1;
            // Right multiplication only touches columns through column i.
            let coeff: Vec<BigInt> = (0..n)
                .map(|c| {
                    if c == i {
                        -two.clone()
                    } else if self.commute(s, c + 1) {
                        BigInt::zero()
                    } else {
                        two.clone()
                    }
                })
                .collect();
            for row in m.rows.iter_mut() {
                let pivot = row[i].clone();
                if pivot.is_zero() {
                    continue;
                }
                for (c, k) in coeff.iter().enumerate() {
                    if !k.is_zero() {
                        row[c] += &pivot * k;
                    }
                }
            }
        }
        Ok(m)
    }
}

/// Exact square integer matrix from the reflection representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReflectionMatrix {
    rows: Vec<Vec<BigInt>>,
}

impl ReflectionMatrix {
    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|r| (0..n).map(|c| if r == c { BigInt::one() } else { BigInt::zero() }).collect())
            .collect();
        ReflectionMatrix { rows }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.rows[r][c]
    }

    pub fn is_identity(&self) -> bool {
        self.rows.iter().enumerate().all(|(r, row)| {
            row.iter()
                .enumerate()
                .all(|(c, x)| if r == c { x.is_one() } else { x.is_zero() })
        })
    }

    pub fn mul(&self, other: &ReflectionMatrix) -> ReflectionMatrix {
        let n = self.dim();
        let rows = (0..n)
            .map(|r| {
                (0..n)
                    .map(|c| (0..n).fold(BigInt::zero(), |acc, k| acc + &self.rows[r][k] * &other.rows[k][c]))
                    .collect()
            })
            .collect();
        ReflectionMatrix { rows }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{as_racg, twin_group};
    use proptest::prelude::*;

    fn tw(n: usize) -> RacgContext {
        RacgContext::new(as_racg(&twin_group(n).unwrap()).unwrap())
    }

    fn g(v: &[usize]) -> Word {
        Word::from_gens(v)
    }

    #[test]
    fn relators_are_trivial() {
        assert!(tw(5).normal_form(&g(&[1, 3, 1, 3])).unwrap().is_empty());
        assert!(tw(3).normal_form(&g(&[1, 1])).unwrap().is_empty());
        assert!(tw(4).is_identity(&Word::empty()).unwrap());
    }

    #[test]
    fn non_commuting_square_is_geodesic() {
        let ctx = tw(3);
        let w = g(&[1, 2, 1, 2]);
        let nf = ctx.normal_form(&w).unwrap();
        assert_eq!(nf, w);
        // Exhaustive: no word of length <= 3 has the same Tits matrix.
        let target = ctx.tits_matrix(&w).unwrap();
        for len in 0..=3usize {
            for code in 0..(1usize << len) {
                let short: Vec<usize> = (0..len).map(|b| 1 + ((code >> b) & 1)).collect();
                assert_ne!(ctx.tits_matrix(&g(&short)).unwrap(), target);
            }
        }
        assert!(!ctx.is_identity(&g(&[1, 2])).unwrap());
        assert!(!ctx.tits_matrix(&w).unwrap().is_identity());
    }

    #[test]
    fn generator_matrix_formula() {
        let m = tw(3).generator_matrix(1).unwrap();
        let expect = [[-1, 2], [0, 1]];
        for r in 0..2 {
            for c in 0..2 {
                assert_eq!(m.get(r, c), &BigInt::from(expect[r][c]));
            }
        }
        assert!(m.mul(&m).is_identity());
        assert!(tw(3).tits_matrix(&Word::empty()).unwrap().is_identity());
    }

    #[test]
    fn inverse_letters_are_involutions() {
        let ctx = tw(4);
        let w = Word::from_signed(&[1, -2, 2, -1]).unwrap();
        assert!(ctx.is_identity(&w).unwrap());
        assert_eq!(
            ctx.normal_form(&Word::from_signed(&[-3, 1]).unwrap()).unwrap(),
            g(&[1, 3])
        );
    }

    #[test]
    fn out_of_range_letter_is_rejected() {
        assert!(matches!(tw(3).normal_form(&g(&[3])), Err(Error::InvalidArgument(_))));
        assert!(tw(3).tits_matrix(&g(&[5])).is_err());
    }

    #[test]
    fn beta_commutation_in_tw6() {
        // beta_0(1) = t2 t1 t2 t1 and beta_0(4) = t5 t4 t5 t4 commute.
        let b1 = g(&[2, 1, 2, 1]);
        let b4 = g(&[5, 4, 5, 4]);
        let w = b1.concat(&b4).concat(&b1.invert()).concat(&b4.invert());
        assert!(tw(6).is_identity(&w).unwrap());
        assert!(tw(6).tits_matrix(&w).unwrap().is_identity());
    }

    fn arb_case() -> impl Strategy<Value = (RacgContext, Word, Word)> {
        (2usize..=6)
            .prop_flat_map(|n| {
                let pairs = n * (n - 1) / 2;
                (
                    Just(n),
                    prop::collection::vec(any::<bool>(), pairs),
                    prop::collection::vec(1..=n, 0..16),
                    prop::collection::vec(1..=n, 0..6),
                )
            })
            .prop_map(|(n, bits, w, u)| {
                let mut graph = CommutationGraph::new(n);
                let mut k = 0;
                for a in 1..=n {
                    for b in a + 1..=n {
                        if bits[k] {
                            graph.add_edge(a, b);
                        }
                        k += 1;
                    }
                }
                (RacgContext::new(graph), Word::from_gens(&w), Word::from_gens(&u))
            })
    }

    proptest! {
        #[test]
        fn normal_form_is_idempotent((ctx, w, _u) in arb_case()) {
            let nf = ctx.normal_form(&w).unwrap();
            prop_assert_eq!(ctx.normal_form(&nf).unwrap(), nf.clone());
            prop_assert_eq!(ctx.tits_matrix(&nf).unwrap(), ctx.tits_matrix(&w).unwrap());
        }

        #[test]
        fn commuting_swap_preserves_normal_form((ctx, w, _u) in arb_case()) {
            let l = w.letters().to_vec();
            for i in 0..l.len().saturating_sub(1) {
                if ctx.graph().has_edge(l[i].gen(), l[i + 1].gen()) {
                    let mut swapped = l.clone();
                    swapped.swap(i, i + 1);
                    prop_assert_eq!(
                        ctx.normal_form(&Word::new(swapped)).unwrap(),
                        ctx.normal_form(&w).unwrap()
                    );
                }
            }
        }

        #[test]
        fn conjugates_of_identity_are_identity((ctx, w, u) in arb_case()) {
            let trivial = w.concat(&w.invert());
            prop_assert!(ctx.is_identity(&trivial).unwrap());
            prop_assert!(ctx.is_identity(&trivial.conjugate(&u)).unwrap());
            for s in 1..=ctx.rank() {
                prop_assert!(ctx.is_identity(&Word::from_gens(&[s, s])).unwrap());
            }
        }

        #[test]
        fn identity_agrees_with_tits((ctx, w, _u) in arb_case()) {
            prop_assert_eq!(
                ctx.is_identity(&w).unwrap(),
                ctx.tits_matrix(&w).unwrap().is_identity()
            );
        }
    }
}
