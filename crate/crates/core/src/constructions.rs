//! Explicit families and designs: projective planes, biplanes, residuals,
//! Steiner augmentation, the mixed-size d-construction, plus exact design
//! certification.

use std::collections::HashMap;

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::{intersection_spectrum, SetFamily, SubsetBits, MAX_GROUND};

/// Largest prime order for which planes are generated.
pub const MAX_PLANE_ORDER: u64 = 11;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DesignParams {
    pub t: u64,
    pub v: u64,
    pub s: u64,
    pub lambda: u64,
}

impl DesignParams {
    /// A symmetric 2-design with block size `s` and index `lambda` has
    /// `v = s(s−1)/λ + 1` points, when that is integral.
    pub fn symmetric(s: u64, lambda: u64) -> Option<DesignParams> {
        if lambda == 0 || s < 2 || !(s * (s - 1)).is_multiple_of(lambda) {
            return None;
        }
        Some(DesignParams {
            t: 2,
            v: s * (s - 1) / lambda + 1,
            s,
            lambda,
        })
    }

    /// Block count `λ·C(v,t)/C(s,t)`, if integral.
    pub fn block_count(&self) -> Option<u64> {
        use crate::bounds::binom;
        let num = binom(self.v, self.t) * self.lambda;
        let den = binom(self.s, self.t);
        if den == 0u32.into() || &num % &den != 0u32.into() {
            return None;
        }
        u64::try_from(num / den).ok()
    }
}

/// Point and block counts `(N, B)` of the residual of a biplane whose
/// residual blocks have size `S`: `N = S(S+1)/2`, `B = (S+2)(S+1)/2`.
pub fn biplane_residual_counts(block_size: u64) -> (u64, u64) {
    let s = block_size;
    (s * (s + 1) / 2, (s + 2) * (s + 1) / 2)
}

fn is_prime(q: u64) -> bool {
    q >= 2
        && (2..q)
            .take_while(|d| d * d <= q)
            .all(|d| !q.is_multiple_of(d))
}

/// Normalized homogeneous triples over Z/q in canonical order:
/// `(0,0,1)`, then `(0,1,z)` for `z = 0..q`, then `(1,y,z)` for `y, z = 0..q`.
/// Point `i` of the plane (1-based) is the `i`-th triple.
pub fn projective_points(q: u64) -> Vec<[u64; 3]> {
    let mut pts = vec![[0, 0, 1]];
    pts.extend((0..q).map(|z| [0, 1, z]));
    pts.extend((0..q).flat_map(|y| (0..q).map(move |z| [1, y, z])));
    pts
}

/// Lines of PG(2, q) for prime `q ≤ 11`. Line `i` has the `i`-th canonical
/// triple as coefficients `(a, b, c)` and holds the points with
/// `ax + by + cz ≡ 0 (mod q)`.
pub fn projective_plane(q: u64) -> Result<SetFamily> {
    if !is_prime(q) || q > MAX_PLANE_ORDER {
        return Err(Error::Unsupported(format!(
            "q must be prime ≤ {MAX_PLANE_ORDER} (got {q}); supported: 2, 3, 5, 7, 11"
        )));
    }
    let pts = projective_points(q);
    let n = pts.len();
    let lines = pts.iter().map(|coef| {
        pts.iter()
            .enumerate()
            .filter(|(_, p)| (coef[0] * p[0] + coef[1] * p[1] + coef[2] * p[2]) % q == 0)
            .map(|(i, _)| i + 1)
            .collect::<Vec<_>>()
    });
    SetFamily::from_lists(n, lines)
}

fn complement(family: &SetFamily) -> Result<SetFamily> {
    let n = family.n();
    SetFamily::from_lists(
        n,
        family
            .members()
            .iter()
            .map(|m| (1..=n).filter(|&e| !m.contains(e)).collect::<Vec<_>>()),
    )
}

/// Complements of the seven Fano lines: the 2-(7,4,2) biplane.
pub fn fano_complement() -> SetFamily {
    complement(&projective_plane(2).expect("q = 2 is supported")).expect("complement stays in [7]")
}

/// Nonzero squares mod a prime `p`, ascending.
pub fn quadratic_residues(p: u64) -> Vec<u64> {
    (1..p).map(|x| x * x % p).sorted().dedup().collect()
}

/// The 2-(11,5,2) biplane developed from the quadratic residues
/// `{1,3,4,5,9}` mod 11: block `i` is `{r + i mod 11}`, point `x` labelled
/// `x + 1`.
pub fn paley_biplane() -> SetFamily {
    let p = 11;
    let residues = quadratic_residues(p);
    SetFamily::from_lists(
        p as usize,
        (0..p).map(|i| {
            residues
                .iter()
                .map(|r| ((r + i) % p) as usize + 1)
                .collect::<Vec<_>>()
        }),
    )
    .expect("residues live in [11]")
}

/// Residual with respect to block `block_index`: points outside that block,
/// relabelled to `1..N` in increasing order, and blocks `B ∖ B₀` for every
/// other block.
pub fn residual(family: &SetFamily, block_index: usize) -> Result<SetFamily> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let base = family.members().get(block_index).ok_or_else(|| {
        Error::InvalidParameter(format!(
            "block index {block_index} out of range for {} blocks",
            family.len()
        ))
    })?;
    let n = family.n();
    let mut new_label = vec![0usize; n + 1];
    let mut next = 0;
    for (e, label) in new_label.iter_mut().enumerate().skip(1) {
        if !base.contains(e) {
            next += 1;
            *label = next;
        }
    }
    if next == 0 {
        return Err(Error::InvalidParameter(
            "removed block covers every point".into(),
        ));
    }
    let mut origin = Vec::new();
    let mut blocks: Vec<SubsetBits> = Vec::new();
    for (i, b) in family.members().iter().enumerate() {
        if i == block_index {
            continue;
        }
        let rest =
            SubsetBits::from_elements(next, b.difference(base).elements().map(|e| new_label[e]))?;
        if rest.is_empty() {
            return Err(Error::InvalidParameter(format!(
                "block {i} lies inside the removed block"
            )));
        }
        if let Some(pos) = blocks.iter().position(|x| *x == rest) {
            return Err(Error::DuplicateResidualBlocks(origin[pos], i));
        }
        origin.push(i);
        blocks.push(rest);
    }
    SetFamily::new(next, blocks)
}

/// Adds the new point `n + 1` to every block of a certified
/// `(n, s−1, k)` Steiner system.
pub fn steiner_augment(steiner: &SetFamily, k: u64) -> Result<SetFamily> {
    if steiner.uniform_size().is_none() {
        return Err(Error::NotUniform);
    }
    let check = verify_design(steiner, k, 1)?;
    if let Some(w) = check.witness {
        let what = if w.count == 0 {
            "uncovered"
        } else {
            "covered more than once"
        };
        return Err(Error::DesignFailed(format!(
            "{k}-subset {{{}}} is {what} (count {})",
            w.subset.iter().join(","),
            w.count
        )));
    }
    let n = steiner.n() + 1;
    if n > MAX_GROUND {
        return Err(Error::GroundSize(n));
    }
    SetFamily::from_lists(
        n,
        steiner
            .members()
            .iter()
            .map(|m| m.elements().chain(std::iter::once(n)).collect::<Vec<_>>()),
    )
}

/// Parameters of the mixed-size construction: ground size `n` and the large
/// member size `s`.
pub fn d_construction_params(k: u64, d: u64) -> Result<(u64, u64)> {
    if d < 2 || k < 3 || !(k - 2).is_multiple_of(d - 1) {
        return Err(Error::InvalidParameter(format!(
            "d-construction needs d ≥ 2, k ≥ 3 and (d−1) | (k−2) (k={k}, d={d})"
        )));
    }
    let r = (k - 2) / (d - 1);
    Ok((2 * k - 2 + r, k - 1 + r))
}

/// All `k`-subsets of `[n]` through 1, followed by `B_i = {2..k} ∪ A_i`
/// where `A_1, …, A_d` split `{k+1..n}` into consecutive runs.
pub fn d_construction(k: u64, d: u64) -> Result<SetFamily> {
    let (n, _) = d_construction_params(k, d)?;
    let (n, k, d) = (n as usize, k as usize, d as usize);
    if n > MAX_GROUND {
        return Err(Error::GroundSize(n));
    }
    let run = (n - k) / d;
    let mut lists: Vec<Vec<usize>> = (2..=n)
        .combinations(k - 1)
        .map(|c| std::iter::once(1).chain(c).collect())
        .collect();
    for i in 0..d {
        let start = k + 1 + i * run;
        lists.push((2..=k).chain(start..start + run).collect());
    }
    SetFamily::from_lists(n, lists)
}

/// `C([n], k)` in lexicographic order.
pub fn all_k_subsets(n: usize, k: usize) -> Result<SetFamily> {
    if k < 1 || k > n {
        return Err(Error::InvalidParameter(format!(
            "need 1 ≤ k ≤ n (n={n}, k={k})"
        )));
    }
    SetFamily::from_lists(n, (1..=n).combinations(k))
}

/// All `s`-subsets of `[n]` containing 1, lexicographic.
pub fn star_family(n: usize, s: usize) -> Result<SetFamily> {
    if s < 1 || s > n {
        return Err(Error::InvalidParameter(format!(
            "need 1 ≤ s ≤ n (n={n}, s={s})"
        )));
    }
    SetFamily::from_lists(
        n,
        (2..=n)
            .combinations(s - 1)
            .map(|c| std::iter::once(1).chain(c).collect::<Vec<_>>()),
    )
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DesignWitness {
    /// 1-based elements of the offending t-subset
    pub subset: Vec<usize>,
    pub count: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DesignCheck {
    pub holds: bool,
    /// lexicographically first t-subset whose block count differs from λ
    pub witness: Option<DesignWitness>,
}

/// Checks that every `t`-subset of `[n]` lies in exactly `lambda` members.
pub fn verify_design(family: &SetFamily, t: u64, lambda: u64) -> Result<DesignCheck> {
    if t == 0 {
        return Err(Error::InvalidParameter(
            "design strength t must be ≥ 1".into(),
        ));
    }
    if !family.is_empty() && family.uniform_size().is_none() {
        return Err(Error::NotUniform);
    }
    let n = family.n();
    let t = t as usize;
    let mut counts: HashMap<Vec<usize>, u64> = HashMap::new();
    for m in family.members() {
        for sub in m.elements().combinations(t) {
            *counts.entry(sub).or_default() += 1;
        }
    }
    let total = crate::bounds::binom(n as u64, t as u64);
    if counts.values().all(|&c| c == lambda) && total == counts.len().into() {
        return Ok(DesignCheck {
            holds: true,
            witness: None,
        });
    }
    let witness = (1..=n)
        .combinations(t)
        .map(|sub| {
            let count = counts.get(&sub).copied().unwrap_or(0);
            DesignWitness { subset: sub, count }
        })
        .find(|w| w.count != lambda);
    Ok(DesignCheck {
        holds: witness.is_none(),
        witness,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct QuasiSymmetricReport {
    pub is_quasi_symmetric: bool,
    pub mu1: Option<usize>,
    pub mu2: Option<usize>,
}

/// At most two distinct pairwise intersection sizes, reported ascending.
pub fn verify_quasi_symmetric(family: &SetFamily) -> Result<QuasiSymmetricReport> {
    if family.len() < 2 {
        return Err(Error::InvalidParameter(
            "quasi-symmetry needs at least two blocks".into(),
        ));
    }
    let sizes: Vec<usize> = intersection_spectrum(family).counts.into_keys().collect();
    Ok(match sizes.as_slice() {
        [a] => QuasiSymmetricReport {
            is_quasi_symmetric: true,
            mu1: Some(*a),
            mu2: None,
        },
        [a, b] => QuasiSymmetricReport {
            is_quasi_symmetric: true,
            mu1: Some(*a),
            mu2: Some(*b),
        },
        _ => QuasiSymmetricReport {
            is_quasi_symmetric: false,
            mu1: None,
            mu2: None,
        },
    })
}
