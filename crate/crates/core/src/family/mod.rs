//! Set families over a ground set `[n] = {1, ..., n}`.
//!
//! Elements are 1-based everywhere in the public API and in the text format;
//! internally element `e` lives at bit `e - 1` of a little-endian word array.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

mod text;

pub use text::{parse_family, write_family};

/// Largest ground set accepted for verification workloads.
pub const MAX_GROUND: usize = 4096;
/// Largest ground set accepted by the exhaustive search.
pub const SEARCH_MAX_GROUND: usize = 64;

pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(64).max(1)
}

/// A subset of `[n]` stored as a membership mask with cached cardinality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SubsetBits {
    words: Vec<u64>,
    size: u32,
}

impl SubsetBits {
    pub fn empty(n: usize) -> Self {
        SubsetBits {
            words: vec![0; words_for(n)],
            size: 0,
        }
    }

    /// Builds a subset from 1-based elements. Repeated elements are merged.
    pub fn from_elements<I>(n: usize, elements: I) -> Result<Self>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut set = Self::empty(n);
        for e in elements {
            if e == 0 || e > n {
                return Err(Error::ElementOutOfRange { element: e, n });
            }
            set.insert(e);
        }
        Ok(set)
    }

    /// Builds a subset from a single-word mask (bit `i` is element `i + 1`).
    pub fn from_u64(n: usize, mask: u64) -> Result<Self> {
        if n < 64 && mask >> n != 0 {
            let element = 64 - mask.leading_zeros() as usize;
            return Err(Error::ElementOutOfRange { element, n });
        }
        let mut words = vec![0; words_for(n)];
        words[0] = mask;
        Ok(SubsetBits {
            words,
            size: mask.count_ones(),
        })
    }

    pub(crate) fn insert(&mut self, e: usize) {
        let (w, b) = ((e - 1) / 64, (e - 1) % 64);
        if self.words[w] & (1 << b) == 0 {
            self.words[w] |= 1 << b;
            self.size += 1;
        }
    }

    pub fn len(&self) -> usize {
        self.size as usize
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn contains(&self, e: usize) -> bool {
        if e == 0 {
            return false;
        }
        let (w, b) = ((e - 1) / 64, (e - 1) % 64);
        self.words.get(w).is_some_and(|word| word & (1 << b) != 0)
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// The mask as a single word, when the subset lives in `[64]`.
    pub fn as_u64(&self) -> Option<u64> {
        if self.words[1..].iter().all(|&w| w == 0) {
            Some(self.words[0])
        } else {
            None
        }
    }

    /// Ascending 1-based elements.
    pub fn elements(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * 64 + b + 1)
            })
        })
    }

    pub fn intersection_size(&self, other: &SubsetBits) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn is_subset_of(&self, other: &SubsetBits) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn difference(&self, other: &SubsetBits) -> SubsetBits {
        let words: Vec<u64> = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a & !b)
            .collect();
        let size = words.iter().map(|w| w.count_ones()).sum();
        SubsetBits { words, size }
    }

    /// True when no bit at position `>= n` is set.
    pub fn fits(&self, n: usize) -> bool {
        if self.words.len() != words_for(n) {
            return false;
        }
        let last = self.words.len() - 1;
        let used = n - last * 64;
        used >= 64 || self.words[last] >> used == 0
    }
}

/// Masks compare as unsigned integers (bit `n - 1` most significant).
impl Ord for SubsetBits {
    fn cmp(&self, other: &Self) -> Ordering {
        self.words
            .len()
            .cmp(&other.words.len())
            .then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }
}

impl PartialOrd for SubsetBits {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for SubsetBits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.elements()).finish()
    }
}

impl Serialize for SubsetBits {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.elements())
    }
}

/// A ground set size plus an ordered list of members.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SetFamily {
    n: usize,
    members: Vec<SubsetBits>,
}

impl SetFamily {
    pub fn new(n: usize, members: Vec<SubsetBits>) -> Result<Self> {
        if n == 0 || n > MAX_GROUND {
            return Err(Error::GroundSize(n));
        }
        if let Some(index) = members.iter().position(|m| !m.fits(n)) {
            return Err(Error::GroundMismatch { index, n });
        }
        Ok(SetFamily { n, members })
    }

    /// Convenience constructor from 1-based element lists.
    pub fn from_lists<L, I>(n: usize, lists: L) -> Result<Self>
    where
        L: IntoIterator<Item = I>,
        I: IntoIterator<Item = usize>,
    {
        if n == 0 || n > MAX_GROUND {
            return Err(Error::GroundSize(n));
        }
        let members = lists
            .into_iter()
            .map(|l| SubsetBits::from_elements(n, l))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, members)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &[SubsetBits] {
        &self.members
    }

    pub fn into_members(self) -> Vec<SubsetBits> {
        self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Smallest and largest member sizes, if any.
    pub fn size_range(&self) -> Option<(usize, usize)> {
        let min = self.members.iter().map(SubsetBits::len).min()?;
        let max = self.members.iter().map(SubsetBits::len).max()?;
        Some((min, max))
    }

    pub fn uniform_size(&self) -> Option<usize> {
        match self.size_range() {
            Some((a, b)) if a == b => Some(a),
            _ => None,
        }
    }

    /// Same members, ordered by mask.
    pub fn sorted(&self) -> SetFamily {
        let mut members = self.members.clone();
        members.sort();
        SetFamily { n: self.n, members }
    }

    /// Re-hosts the family on a larger ground set `[m]`, `m >= n`.
    pub fn embed(&self, m: usize) -> Result<SetFamily> {
        if m < self.n {
            return Err(Error::InvalidParameter(format!(
                "cannot embed [{}] into [{m}]",
                self.n
            )));
        }
        SetFamily::from_lists(
            m,
            self.members
                .iter()
                .map(|s| s.elements().collect::<Vec<_>>()),
        )
    }
}

/// Which intersection sizes a pair of members may have.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Allowed {
    Interval { lmin: usize, lmax: usize },
    Explicit(BTreeSet<usize>),
}

/// Admissibility rule for families: allowed pairwise intersection sizes and
/// the member-size window `[size_min, size_max]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionConstraint {
    allowed: Allowed,
    size_min: usize,
    size_max: usize,
}

impl IntersectionConstraint {
    pub fn new(allowed: Allowed, size_min: usize, size_max: usize) -> Result<Self> {
        if size_min < 1 || size_min > size_max {
            return Err(Error::Constraint(format!(
                "size window [{size_min}, {size_max}] must satisfy 1 <= min <= max"
            )));
        }
        match &allowed {
            Allowed::Interval { lmin, lmax } => {
                if lmin > lmax || *lmax > size_max {
                    return Err(Error::Constraint(format!(
                        "interval [{lmin}, {lmax}] must satisfy lmin <= lmax <= {size_max}"
                    )));
                }
            }
            Allowed::Explicit(set) => {
                if let Some(&bad) = set.iter().find(|&&l| l > size_max) {
                    return Err(Error::Constraint(format!(
                        "intersection size {bad} exceeds the maximum member size {size_max}"
                    )));
                }
            }
        }
        Ok(IntersectionConstraint {
            allowed,
            size_min,
            size_max,
        })
    }

    pub fn interval(lmin: usize, lmax: usize, size_min: usize, size_max: usize) -> Result<Self> {
        Self::new(Allowed::Interval { lmin, lmax }, size_min, size_max)
    }

    pub fn explicit<I>(sizes: I, size_min: usize, size_max: usize) -> Result<Self>
    where
        I: IntoIterator<Item = usize>,
    {
        Self::new(
            Allowed::Explicit(sizes.into_iter().collect()),
            size_min,
            size_max,
        )
    }

    pub fn allowed(&self) -> &Allowed {
        &self.allowed
    }

    pub fn size_min(&self) -> usize {
        self.size_min
    }

    pub fn size_max(&self) -> usize {
        self.size_max
    }

    pub fn admits_intersection(&self, size: usize) -> bool {
        match &self.allowed {
            Allowed::Interval { lmin, lmax } => (*lmin..=*lmax).contains(&size),
            Allowed::Explicit(set) => set.contains(&size),
        }
    }

    pub fn admits_size(&self, size: usize) -> bool {
        (self.size_min..=self.size_max).contains(&size)
    }

    /// Bit `l` set iff intersection size `l` is admitted, for `l < 128`.
    pub(crate) fn intersection_table(&self) -> u128 {
        (0..128usize)
            .filter(|&l| self.admits_intersection(l))
            .fold(0u128, |acc, l| acc | (1u128 << l))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    IntersectionSize,
    MemberSize,
    Duplicate,
}

/// A violating pair `(i, j)`, 0-based member indices. Member-size violations
/// use `i == j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub i: usize,
    pub j: usize,
    pub kind: ViolationKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub first_violation: Option<Violation>,
}

/// Checks distinctness, the size window and pairwise intersection sizes.
///
/// The reported violation is the earliest in `(i, j)` order, where a
/// member-size problem of member `i` sits at `(i, i)`.
pub fn validate_family(
    family: &SetFamily,
    constraint: &IntersectionConstraint,
) -> Result<ValidationReport> {
    let n = family.n();
    if let Some(index) = family.members().iter().position(|m| !m.fits(n)) {
        return Err(Error::GroundMismatch { index, n });
    }
    let members = family.members();
    for (i, a) in members.iter().enumerate() {
        let mut found = None;
        if !constraint.admits_size(a.len()) {
            found = Some(Violation {
                i,
                j: i,
                kind: ViolationKind::MemberSize,
            });
        } else {
            for (j, b) in members.iter().enumerate().skip(i + 1) {
                let kind = if a == b {
                    ViolationKind::Duplicate
                } else if !constraint.admits_intersection(a.intersection_size(b)) {
                    ViolationKind::IntersectionSize
                } else {
                    continue;
                };
                found = Some(Violation { i, j, kind });
                break;
            }
        }
        if found.is_some() {
            return Ok(ValidationReport {
                valid: false,
                first_violation: found,
            });
        }
    }
    Ok(ValidationReport {
        valid: true,
        first_violation: None,
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SpectrumReport {
    /// intersection size -> number of unordered pairs
    pub counts: BTreeMap<usize, u64>,
    /// member size -> number of members
    pub size_histogram: BTreeMap<usize, u64>,
}

impl SpectrumReport {
    pub fn pair_total(&self) -> u64 {
        self.counts.values().sum()
    }
}

pub fn intersection_spectrum(family: &SetFamily) -> SpectrumReport {
    let mut report = SpectrumReport::default();
    let members = family.members();
    for (i, a) in members.iter().enumerate() {
        *report.size_histogram.entry(a.len()).or_default() += 1;
        for b in &members[i + 1..] {
            *report.counts.entry(a.intersection_size(b)).or_default() += 1;
        }
    }
    report
}

/// Smallest element lying in every member.
pub fn find_common_element(family: &SetFamily) -> Result<Option<usize>> {
    let (first, rest) = family.members().split_first().ok_or(Error::EmptyFamily)?;
    let mut common = first.words().to_vec();
    for m in rest {
        for (c, w) in common.iter_mut().zip(m.words()) {
            *c &= w;
        }
    }
    Ok(common
        .iter()
        .enumerate()
        .find(|(_, &w)| w != 0)
        .map(|(wi, w)| wi * 64 + w.trailing_zeros() as usize + 1))
}

/// Lexicographically smallest `(u, v)`, `u < v`, such that every member
/// contains `u` or `v`. Pairs induced by a common element are included.
pub fn find_hitting_pair(family: &SetFamily) -> Result<Option<(usize, usize)>> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let n = family.n();
    let m = family.len();
    let row = m.div_ceil(64);
    // misses[u] = bitset of members avoiding element u + 1
    let mut misses = vec![0u64; n * row];
    for (idx, member) in family.members().iter().enumerate() {
        for u in 0..n {
            if !member.contains(u + 1) {
                misses[u * row + idx / 64] |= 1 << (idx % 64);
            }
        }
    }
    for u in 0..n {
        let mu = &misses[u * row..(u + 1) * row];
        for v in u + 1..n {
            let mv = &misses[v * row..(v + 1) * row];
            if mu.iter().zip(mv).all(|(a, b)| a & b == 0) {
                return Ok(Some((u + 1, v + 1)));
            }
        }
    }
    Ok(None)
}

/// Maps every element `e` to `perm[e - 1]` (1-based images).
pub fn relabel(family: &SetFamily, perm: &[usize]) -> Result<SetFamily> {
    let n = family.n();
    if perm.len() != n {
        return Err(Error::NotPermutation {
            n,
            reason: format!("expected {n} images, got {}", perm.len()),
        });
    }
    let mut seen = vec![false; n];
    for (i, &img) in perm.iter().enumerate() {
        if img == 0 || img > n {
            return Err(Error::NotPermutation {
                n,
                reason: format!("image {img} of element {} is out of range", i + 1),
            });
        }
        if std::mem::replace(&mut seen[img - 1], true) {
            return Err(Error::NotPermutation {
                n,
                reason: format!("image {img} repeats"),
            });
        }
    }
    SetFamily::from_lists(
        n,
        family
            .members()
            .iter()
            .map(|m| m.elements().map(|e| perm[e - 1]).collect::<Vec<_>>()),
    )
}
