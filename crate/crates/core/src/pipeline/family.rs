//! Tournament families: enumeration up to isomorphism and reduction of a
//! (possibly infinite) family to a finite one that is sound for a given
//! input size.

use alloc::vec::Vec;

use super::PipelineError;
use crate::structures::Tournament;

/// Largest tournament size [`enumerate_tournaments`] accepts.
pub const MAX_ENUMERATION: usize = 7;

/// A family of forbidden tournaments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    Finite(Vec<Tournament>),
    /// Every tournament with at least this many vertices.
    AllFromSize(usize),
}

/// One tournament per isomorphism class on `k` vertices, in increasing
/// order of the smallest code of the class (see [`Tournament::from_code`]).
pub fn enumerate_tournaments(k: usize) -> Result<Vec<Tournament>, PipelineError> {
    if k > MAX_ENUMERATION {
        return Err(PipelineError::EnumerationBound {
            n: k,
            max: MAX_ENUMERATION,
        });
    }
    if k == 0 {
        return Ok(Vec::new());
    }
    let pairs = k * (k - 1) / 2;
    let perms = permutations(k);
    let mut out = Vec::new();
    for code in 0..1u64 << pairs {
        if is_minimal(k, code, &perms) {
            out.push(Tournament::from_code(k, code));
        }
    }
    Ok(out)
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..k).collect();
    heap(k, &mut p, &mut out);
    out
}

fn heap(n: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if n <= 1 {
        out.push(p.clone());
        return;
    }
    for i in 0..n - 1 {
        heap(n - 1, p, out);
        if n.is_multiple_of(2) {
            p.swap(i, n - 1);
        } else {
            p.swap(0, n - 1);
        }
    }
    heap(n - 1, p, out);
}

/// Bit of pair `(x, y)`, `x < y`, in lexicographic pair order.
fn pair_index(k: usize, x: usize, y: usize) -> usize {
    x * (2 * k - x - 1) / 2 + (y - x - 1)
}

/// Whether no relabelling yields a smaller code. Comparing from the most
/// significant bit lets most candidates fail early.
fn is_minimal(k: usize, code: u64, perms: &[Vec<usize>]) -> bool {
    let beats = |x: usize, y: usize| -> bool {
        // x -> y
        if x < y {
            code >> pair_index(k, x, y) & 1 == 0
        } else {
            code >> pair_index(k, y, x) & 1 == 1
        }
    };
    let pairs = k * (k - 1) / 2;
    let order: Vec<(usize, usize)> = (0..k).flat_map(|x| (x + 1..k).map(move |y| (x, y))).collect();
    for p in perms {
        // New code: pair (x, y) reversed iff p[y] -> p[x] in the original,
        // where vertex x of the relabelled tournament is p[x].
        for bit in (0..pairs).rev() {
            let (x, y) = order[bit];
            let new_bit = !beats(p[x], p[y]);
            let old_bit = code >> bit & 1 == 1;
            if new_bit != old_bit {
                if !new_bit {
                    return false;
                }
                break;
            }
        }
    }
    true
}

/// Replaces `family` by a finite family `F_0` for inputs of size `m`: its
/// members of size at most `m` together with every tournament of size
/// `m + 1`. An input of size `m` is `F`-free iff it is `F_0`-free, and every
/// `F_0`-free digraph is `F`-free since each larger tournament contains one
/// of size `m + 1`.
pub fn reduce_family(family: &FamilySpec, m: usize) -> Result<Vec<Tournament>, PipelineError> {
    let mut out: Vec<Tournament> = match family {
        FamilySpec::Finite(list) => list.iter().filter(|t| t.len() <= m).cloned().collect(),
        FamilySpec::AllFromSize(s) => {
            let mut v = Vec::new();
            for k in (*s).max(1)..=m {
                v.extend(enumerate_tournaments(k)?);
            }
            v
        }
    };
    out.extend(enumerate_tournaments(m + 1)?);
    Ok(out)
}
