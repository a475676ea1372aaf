//! Relation matrices, Smith normal form and abelian invariants.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::presentation::Presentation;

/// Dense matrix of arbitrary-precision integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    /// Panics if the rows are ragged.
    pub fn from_rows<T: Into<BigInt> + Copy>(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged matrix");
            for (c, &x) in row.iter().enumerate() {
                m.set(r, c, x.into());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: BigInt) {
        self.entries[r * self.cols + c] = value;
    }

    fn to_rows(&self) -> Vec<Vec<BigInt>> {
        self.entries.chunks(self.cols.max(1)).take(self.rows).map(<[BigInt]>::to_vec).collect()
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Rows are relators, columns generators, entries exponent sums.
pub fn relation_matrix(p: &Presentation) -> IntMatrix {
    let mut m = IntMatrix::zeros(p.relators().len(), p.generator_count());
    for (r, w) in p.relators().iter().enumerate() {
        for g in 1..=p.generator_count() {
            let e = w.exponent_sum(g);
            if e != 0 {
                m.set(r, g - 1, BigInt::from(e));
            }
        }
    }
    m
}

/// Invariant factors `d1 | d2 | ... | dk` (`k = min(rows, cols)`), all
/// nonnegative, zeros last.
///
/// Pivots are chosen by smallest nonzero absolute value in the active block;
/// a unit pivot is taken as soon as one is seen.
pub fn smith_normal_form(m: &IntMatrix) -> Vec<BigInt> {
    let k = m.rows().min(m.cols());
    let mut a = m.to_rows();
    // Zero rows never matter; drop them up front so the scan stays short.
    a.retain(|row| row.iter().any(|x| !x.is_zero()));
    let (rows, cols) = (a.len(), m.cols());
    let mut diag = Vec::with_capacity(k);

    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pr, pc)) = find_pivot(&a, t, cols) else { break };
        a.swap(t, pr);
        if pc != t {
            for row in a.iter_mut() {
                row.swap(t, pc);
            }
        }
        loop {
            let mut dirty = false;
            let pivot_cols: Vec<usize> = (t..cols).filter(|&c| !a[t][c].is_zero()).collect();
            for r in t + 1..rows {
                if a[r][t].is_zero() {
                    continue;
                }
                let q = a[r][t].div_floor(&a[t][t]);
                if !q.is_zero() {
                    for &c in &pivot_cols {
                        let delta = &q * &a[t][c];
                        a[r][c] -= delta;
                    }
                }
                if !a[r][t].is_zero() {
                    dirty = true;
                }
            }
            let pivot_rows: Vec<usize> = (t..rows).filter(|&r| !a[r][t].is_zero()).collect();
            for c in t + 1..cols {
                if a[t][c].is_zero() {
                    continue;
                }
                let q = a[t][c].div_floor(&a[t][t]);
                if !q.is_zero() {
                    for &r in &pivot_rows {
                        let delta = &q * &a[r][t];
                        a[r][c] -= delta;
                    }
                }
                if !a[t][c].is_zero() {
                    dirty = true;
                }
            }
            if !dirty {
                break;
            }
            // Move the smallest leftover in row t / column t into the pivot.
            let mut best: Option<(usize, usize)> = None;
            let mut best_abs = a[t][t].abs();
            for r in t + 1..rows {
                if !a[r][t].is_zero() && a[r][t].abs() < best_abs {
                    best_abs = a[r][t].abs();
                    best = Some((r, t));
                }
            }
            for c in t + 1..cols {
                if !a[t][c].is_zero() && a[t][c].abs() < best_abs {
                    best_abs = a[t][c].abs();
                    best = Some((t, c));
                }
            }
            match best {
                Some((r, c)) if c == t => a.swap(t, r),
                Some((_, c)) => {
                    for row in a.iter_mut() {
                        row.swap(t, c);
                    }
                }
                None => unreachable!("remainders are smaller than the pivot"),
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag.resize(k, BigInt::zero());
    normalize_divisibility(&mut diag);
    diag
}

fn find_pivot(a: &[Vec<BigInt>], t: usize, cols: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    let mut best_abs = BigInt::zero();
    for c in t..cols {
        for (r, row) in a.iter().enumerate().skip(t) {
            let x = &row[c];
            if x.is_zero() {
                continue;
            }
            let ax = x.abs();
            if ax.is_one() {
                return Some((r, c));
            }
            if best.is_none() || ax < best_abs {
                best_abs = ax;
                best = Some((r, c));
            }
        }
    }
    best
}

// Turns any diagonal into the divisibility chain via gcd/lcm exchanges.
fn normalize_divisibility(d: &mut [BigInt]) {
    let n = d.len();
    for i in 0..n {
        for j in i + 1..n {
            if d[i].is_zero() && !d[j].is_zero() {
                d.swap(i, j);
            }
            if d[i].is_zero() || d[j].is_zero() {
                continue;
            }
            let g = d[i].gcd(&d[j]);
            let l = d[i].lcm(&d[j]);
            d[i] = g;
            d[j] = l;
        }
    }
}

/// `Z^free_rank ⊕ Z/t1 ⊕ ... ⊕ Z/tk` with `t1 | t2 | ...`, all `ti >= 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianInvariants {
    pub fn free(rank: usize) -> Self {
        AbelianInvariants {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn is_free_abelian(&self) -> bool {
        self.torsion.is_empty()
    }

    /// `{"free_rank": r, "torsion": [..]}`; torsion entries beyond `u64`
    /// are written as decimal strings.
    pub fn to_json(&self) -> serde_json::Value {
        let torsion: Vec<serde_json::Value> = self
            .torsion
            .iter()
            .map(|t| match t.to_u64() {
                Some(v) => serde_json::Value::from(v),
                None => serde_json::Value::from(t.to_string()),
            })
            .collect();
        serde_json::json!({ "free_rank": self.free_rank, "torsion": torsion })
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.free_rank > 0 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

pub fn abelian_invariants(p: &Presentation) -> AbelianInvariants {
    let factors = smith_normal_form(&relation_matrix(p));
    let nonzero = factors.iter().filter(|d| !d.is_zero()).count();
    AbelianInvariants {
        free_rank: p.generator_count() - nonzero,
        torsion: factors.into_iter().filter(|d| d > &BigInt::one()).collect(),
    }
}
