//! Tietze transformations: relator cleanup and single-occurrence generator
//! elimination, iterated to a fixed point under a budget.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::words::Word;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SimplificationBudget {
    pub max_passes: usize,
    pub max_relator_length: usize,
}

impl SimplificationBudget {
    pub fn new(max_passes: usize, max_relator_length: usize) -> Result<Self> {
        if max_passes == 0 || max_relator_length == 0 {
            return Err(Error::InvalidArgument("simplification budget values must be >= 1".into()));
        }
        Ok(SimplificationBudget {
            max_passes,
            max_relator_length,
        })
    }
}

impl Default for SimplificationBudget {
    fn default() -> Self {
        SimplificationBudget {
            max_passes: 100_000,
            max_relator_length: 512,
        }
    }
}

/// Result of a single generator elimination.
#[derive(Clone, Debug)]
pub struct Elimination {
    pub presentation: Presentation,
    pub removed: String,
    /// The removed generator expressed in the remaining generators (indices
    /// refer to the new presentation).
    pub replacement: Word,
}

/// Removes generator `gen` using relator `relator`, in which `gen` must
/// occur exactly once. If the relator rotates to `gen · w` then `gen = w⁻¹`
/// is substituted everywhere; for `gen⁻¹ · w`, `gen = w`.
pub fn eliminate(p: &Presentation, gen: usize, relator: usize) -> Result<Elimination> {
    let r = p
        .relators()
        .get(relator)
        .ok_or_else(|| Error::InvalidArgument(format!("no relator {relator}")))?;
    if gen == 0 || gen > p.generator_count() {
        return Err(Error::InvalidArgument(format!("no generator {gen}")));
    }
    let occurrences = r.occurrences(gen);
    if occurrences != 1 {
        return Err(Error::NotEliminable {
            gen,
            relator,
            occurrences,
        });
    }
    let image = solve_for(r, gen);
    let relators = p
        .relators()
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != relator)
        .map(|(_, w)| w.substitute(gen, &image).cyclic_reduce())
        .collect();
    Ok(drop_generator(p, gen, relators, &image))
}

fn solve_for(r: &Word, gen: usize) -> Word {
    let pos = r
        .letters()
        .iter()
        .position(|l| l.gen() == gen)
        .expect("generator occurs once");
    let rotated = r.rotate(pos);
    let rest = Word::new(rotated.letters()[1..].to_vec());
    if rotated.letters()[0].is_inverse() {
        rest
    } else {
        rest.invert()
    }
}

fn drop_generator(p: &Presentation, gen: usize, relators: Vec<Word>, image: &Word) -> Elimination {
    let shift = |g: usize| if g > gen { g - 1 } else { g };
    let mut names = p.generator_names().to_vec();
    let removed = names.remove(gen - 1);
    let relators = relators.iter().map(|w| w.map_gens(shift)).collect();
    Elimination {
        presentation: Presentation::from_parts(names, relators),
        removed,
        replacement: image.free_reduce().map_gens(shift),
    }
}

/// Cyclically reduces relators, drops empty ones and keeps one relator per
/// class up to rotation and inversion.
pub fn remove_redundant(p: &Presentation) -> Presentation {
    let mut seen = HashSet::new();
    let relators = p
        .relators()
        .iter()
        .map(Word::cyclic_reduce)
        .filter(|w| !w.is_empty() && seen.insert(w.relator_key()))
        .collect();
    Presentation::from_parts(p.generator_names().to_vec(), relators)
}

#[derive(Clone, Debug)]
pub struct SimplifyOutcome {
    pub presentation: Presentation,
    pub eliminations: usize,
    pub budget_exhausted: bool,
}

pub fn simplify(p: &Presentation, budget: SimplificationBudget) -> SimplifyOutcome {
    simplify_observed(p, budget, |_| {})
}

/// As [`simplify`], calling `observe` on the input and after every
/// individual step (cleanup or elimination).
pub fn simplify_observed(
    p: &Presentation,
    budget: SimplificationBudget,
    mut observe: impl FnMut(&Presentation),
) -> SimplifyOutcome {
    observe(p);
    let mut current = p.clone();
    let mut eliminations = 0;
    let mut passes = 0;
    loop {
        if passes == budget.max_passes {
            return SimplifyOutcome {
                presentation: current,
                eliminations,
                budget_exhausted: true,
            };
        }
        passes += 1;
        let cleaned = remove_redundant(&current);
        if cleaned != current {
            observe(&cleaned);
            current = cleaned;
        }
        match next_elimination(&current, budget.max_relator_length) {
            Some(step) => {
                observe(&step.presentation);
                current = step.presentation;
                eliminations += 1;
            }
            None => {
                return SimplifyOutcome {
                    presentation: current,
                    eliminations,
                    budget_exhausted: false,
                }
            }
        }
    }
}

// Shortest relator first, then lowest relator index, then lowest generator
// index; a candidate is skipped when it would push some relator past the cap.
fn next_elimination(p: &Presentation, max_len: usize) -> Option<Elimination> {
    let mut order: Vec<usize> = (0..p.relators().len()).collect();
    order.sort_by_key(|&i| (p.relators()[i].len(), i));
    for ri in order {
        let r = &p.relators()[ri];
        let mut counts = vec![0usize; p.generator_count() + 1];
        for l in r.letters() {
            counts[l.gen()] += 1;
        }
        for gen in 1..=p.generator_count() {
            if counts[gen] != 1 {
                continue;
            }
            let image = solve_for(r, gen);
            let mut relators = Vec::with_capacity(p.relators().len() - 1);
            let mut fits = true;
            for (i, w) in p.relators().iter().enumerate() {
                if i == ri {
                    continue;
                }
                let new = if w.occurrences(gen) == 0 {
                    w.clone()
                } else {
                    w.substitute(gen, &image).cyclic_reduce()
                };
                if new.len() > max_len {
                    fits = false;
                    break;
                }
                relators.push(new);
            }
            if fits {
                return Some(drop_generator(p, gen, relators, &image));
            }
        }
    }
    None
}
