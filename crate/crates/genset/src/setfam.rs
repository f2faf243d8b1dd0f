//! Set families over a small ground set, the canonical generator
//! construction, and exact coverage by disjoint (or overlapping) unions.
//!
//! A family generates a subset `x` of the ground set if `x` splits into at
//! most `k` pairwise disjoint members. The empty set always counts as
//! generated (union of zero members), which is what makes the canonical
//! construction below a generator even though it excludes the empty set.

use std::fmt;

use crate::bits::subsets_of;
use crate::error::{Error, Result};

/// Largest ground-set size representable in a mask.
pub const MAX_GROUND_N: u32 = 30;
/// Largest ground-set size for which a full 2^n coverage table is built.
pub const MAX_COVERAGE_N: u32 = 24;

/// A subset of the ground set `{1, ..., n}` stored as a bitmask.
/// Element `i` (1-based) corresponds to bit `i-1`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct SubsetMask {
    bits: u32,
    ground_n: u32,
}

impl SubsetMask {
    pub fn new(bits: u32, ground_n: u32) -> Result<Self> {
        if ground_n == 0 || ground_n > MAX_GROUND_N {
            return Err(Error::invalid(format!(
                "ground size {ground_n} not in 1..={MAX_GROUND_N}"
            )));
        }
        if ground_n < 32 && bits >> ground_n != 0 {
            return Err(Error::invalid(format!(
                "mask {bits:#x} has bits above ground size {ground_n}"
            )));
        }
        Ok(SubsetMask { bits, ground_n })
    }

    pub fn empty(ground_n: u32) -> Result<Self> {
        SubsetMask::new(0, ground_n)
    }

    pub fn full(ground_n: u32) -> Result<Self> {
        if ground_n == 0 || ground_n > MAX_GROUND_N {
            return Err(Error::invalid(format!(
                "ground size {ground_n} not in 1..={MAX_GROUND_N}"
            )));
        }
        Ok(SubsetMask {
            bits: (1u32 << ground_n) - 1,
            ground_n,
        })
    }

    /// Builds a mask from 1-based elements.
    pub fn from_elems(elems: &[u32], ground_n: u32) -> Result<Self> {
        let mut bits = 0u32;
        for &e in elems {
            if e == 0 || e > ground_n {
                return Err(Error::invalid(format!(
                    "element {e} outside ground set 1..={ground_n}"
                )));
            }
            bits |= 1 << (e - 1);
        }
        SubsetMask::new(bits, ground_n)
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn ground_n(&self) -> u32 {
        self.ground_n
    }

    pub fn cardinality(&self) -> u32 {
        self.bits.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn contains(&self, elem: u32) -> bool {
        elem >= 1 && elem <= self.ground_n && self.bits >> (elem - 1) & 1 == 1
    }

    pub fn is_disjoint(&self, other: &SubsetMask) -> bool {
        self.bits & other.bits == 0
    }

    pub fn is_subset_of(&self, other: &SubsetMask) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn union(&self, other: &SubsetMask) -> SubsetMask {
        debug_assert_eq!(self.ground_n, other.ground_n);
        SubsetMask {
            bits: self.bits | other.bits,
            ground_n: self.ground_n,
        }
    }

    pub fn intersection(&self, other: &SubsetMask) -> SubsetMask {
        debug_assert_eq!(self.ground_n, other.ground_n);
        SubsetMask {
            bits: self.bits & other.bits,
            ground_n: self.ground_n,
        }
    }

    /// 1-based elements in increasing order.
    pub fn elems(&self) -> impl Iterator<Item = u32> + '_ {
        (1..=self.ground_n).filter(|&e| self.contains(e))
    }
}

impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "-");
        }
        let mut first = true;
        for e in self.elems() {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
            first = false;
        }
        Ok(())
    }
}

/// A deduplicated family of subsets of a fixed ground set, kept strictly
/// sorted by mask value so equal families compare bit-identically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SetFamily {
    ground_n: u32,
    members: Vec<SubsetMask>,
}

impl SetFamily {
    pub fn new(ground_n: u32) -> Result<Self> {
        if ground_n == 0 || ground_n > MAX_GROUND_N {
            return Err(Error::invalid(format!(
                "ground size {ground_n} not in 1..={MAX_GROUND_N}"
            )));
        }
        Ok(SetFamily {
            ground_n,
            members: Vec::new(),
        })
    }

    pub fn from_masks(ground_n: u32, masks: impl IntoIterator<Item = SubsetMask>) -> Result<Self> {
        let mut fam = SetFamily::new(ground_n)?;
        for m in masks {
            if m.ground_n() != ground_n {
                return Err(Error::invalid(format!(
                    "member has ground size {} in family over {ground_n}",
                    m.ground_n()
                )));
            }
            fam.members.push(m);
        }
        fam.members.sort_unstable();
        fam.members.dedup();
        Ok(fam)
    }

    pub fn from_bits(ground_n: u32, bits: &[u32]) -> Result<Self> {
        let masks = bits
            .iter()
            .map(|&b| SubsetMask::new(b, ground_n))
            .collect::<Result<Vec<_>>>()?;
        SetFamily::from_masks(ground_n, masks)
    }

    pub fn ground_n(&self) -> u32 {
        self.ground_n
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[SubsetMask] {
        &self.members
    }

    pub fn iter(&self) -> impl Iterator<Item = &SubsetMask> {
        self.members.iter()
    }

    pub fn contains(&self, m: &SubsetMask) -> bool {
        self.members.binary_search(m).is_ok()
    }

    /// Inserts a member, returning false if it was already present.
    pub fn insert(&mut self, m: SubsetMask) -> Result<bool> {
        if m.ground_n() != self.ground_n {
            return Err(Error::invalid("member ground size mismatch"));
        }
        match self.members.binary_search(&m) {
            Ok(_) => Ok(false),
            Err(pos) => {
                self.members.insert(pos, m);
                Ok(true)
            }
        }
    }

    pub fn union_with(&self, other: &SetFamily) -> Result<SetFamily> {
        if other.ground_n != self.ground_n {
            return Err(Error::invalid("family ground size mismatch"));
        }
        SetFamily::from_masks(
            self.ground_n,
            self.members.iter().chain(other.members.iter()).copied(),
        )
    }

    /// Serializes to the family text format.
    pub fn to_text(&self) -> String {
        let mut out = format!("n={}\n", self.ground_n);
        for m in &self.members {
            out.push_str(&m.to_string());
            out.push('\n');
        }
        out
    }

    /// Parses the family text format: a `n=<int>` header, then one member
    /// per line as comma-separated 1-based elements in increasing order
    /// (`-` for the empty set). `#` starts a comment line.
    pub fn parse_str(text: &str) -> Result<SetFamily> {
        let mut ground_n: Option<u32> = None;
        let mut masks: Vec<SubsetMask> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            match ground_n {
                None => {
                    let n = line
                        .strip_prefix("n=")
                        .ok_or_else(|| Error::Parse {
                            line: line_no,
                            msg: format!("expected `n=<int>` header, got `{line}`"),
                        })?
                        .trim()
                        .parse::<u32>()
                        .map_err(|e| Error::Parse {
                            line: line_no,
                            msg: format!("bad ground size: {e}"),
                        })?;
                    if n == 0 || n > MAX_GROUND_N {
                        return Err(Error::Parse {
                            line: line_no,
                            msg: format!("ground size {n} not in 1..={MAX_GROUND_N}"),
                        });
                    }
                    ground_n = Some(n);
                }
                Some(n) => {
                    let mask = parse_member_line(line, n).map_err(|msg| Error::Parse {
                        line: line_no,
                        msg,
                    })?;
                    masks.push(mask);
                }
            }
        }
        let n = ground_n.ok_or(Error::Parse {
            line: 0,
            msg: "missing `n=<int>` header".into(),
        })?;
        SetFamily::from_masks(n, masks)
    }

    pub fn read_file(path: &std::path::Path) -> Result<SetFamily> {
        SetFamily::parse_str(&std::fs::read_to_string(path)?)
    }

    pub fn write_file(&self, path: &std::path::Path) -> Result<()> {
        Ok(std::fs::write(path, self.to_text())?)
    }
}

fn parse_member_line(line: &str, ground_n: u32) -> std::result::Result<SubsetMask, String> {
    if line == "-" {
        return Ok(SubsetMask::empty(ground_n).expect("validated ground"));
    }
    let mut elems = Vec::new();
    for part in line.split(',') {
        let e: u32 = part
            .trim()
            .parse()
            .map_err(|err| format!("bad element `{part}`: {err}"))?;
        if e == 0 || e > ground_n {
            return Err(format!("element {e} outside ground set 1..={ground_n}"));
        }
        if let Some(&last) = elems.last() {
            if e <= last {
                return Err(format!("elements not strictly increasing at {e}"));
            }
        }
        elems.push(e);
    }
    SubsetMask::from_elems(&elems, ground_n).map_err(|e| e.to_string())
}

/// An ordered partition of the ground set into nonempty blocks.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroundPartition {
    ground_n: u32,
    blocks: Vec<SubsetMask>,
}

impl GroundPartition {
    pub fn new(ground_n: u32, blocks: Vec<SubsetMask>) -> Result<Self> {
        let mut seen = 0u32;
        for b in &blocks {
            if b.ground_n() != ground_n {
                return Err(Error::invalid("block ground size mismatch"));
            }
            if b.is_empty() {
                return Err(Error::invalid("partition block is empty"));
            }
            if seen & b.bits() != 0 {
                return Err(Error::invalid("partition blocks overlap"));
            }
            seen |= b.bits();
        }
        let full = SubsetMask::full(ground_n)?;
        if seen != full.bits() {
            return Err(Error::invalid("partition blocks do not cover the ground set"));
        }
        Ok(GroundPartition { ground_n, blocks })
    }

    pub fn ground_n(&self) -> u32 {
        self.ground_n
    }

    pub fn k(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[SubsetMask] {
        &self.blocks
    }
}

/// Coverage table over all 2^n subsets: which sets are a disjoint union of
/// at most `k` family members.
#[derive(Clone, Debug)]
pub struct CoverageMap {
    ground_n: u32,
    k: usize,
    words: Vec<u64>,
}

impl CoverageMap {
    fn empty(ground_n: u32, k: usize) -> Self {
        let size = 1usize << ground_n;
        CoverageMap {
            ground_n,
            k,
            words: vec![0u64; size.div_ceil(64)],
        }
    }

    pub fn ground_n(&self) -> u32 {
        self.ground_n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn covered_bits(&self, mask: u32) -> bool {
        self.words[(mask >> 6) as usize] >> (mask & 63) & 1 == 1
    }

    pub fn covered(&self, m: &SubsetMask) -> bool {
        debug_assert_eq!(m.ground_n(), self.ground_n);
        self.covered_bits(m.bits())
    }

    #[inline]
    fn set(&mut self, mask: u32) {
        self.words[(mask >> 6) as usize] |= 1u64 << (mask & 63);
    }

    pub fn count_covered(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn is_full(&self) -> bool {
        self.count_covered() == 1u64 << self.ground_n
    }

    /// Smallest (by mask value) subset that is not covered.
    pub fn first_uncovered(&self) -> Option<SubsetMask> {
        let total = 1u64 << self.ground_n;
        for (wi, &w) in self.words.iter().enumerate() {
            if w != u64::MAX {
                let bit = (!w).trailing_zeros();
                let mask = (wi as u64) * 64 + bit as u64;
                if mask < total {
                    return Some(SubsetMask::new(mask as u32, self.ground_n).unwrap());
                }
            }
        }
        None
    }
}

/// Partition of `{1..n}` into `k` consecutive integer ranges with sizes as
/// equal as possible, larger blocks first.
pub fn balanced_partition(n: u32, k: u32) -> Result<GroundPartition> {
    if n == 0 || n > MAX_GROUND_N || k == 0 || k > n {
        return Err(Error::invalid(format!(
            "need 1 <= k <= n <= {MAX_GROUND_N}, got n={n} k={k}"
        )));
    }
    let q = n / k;
    let r = n % k;
    let mut blocks = Vec::with_capacity(k as usize);
    let mut next = 1u32;
    for i in 0..k {
        let size = if i < r { q + 1 } else { q };
        let elems: Vec<u32> = (next..next + size).collect();
        blocks.push(SubsetMask::from_elems(&elems, n)?);
        next += size;
    }
    GroundPartition::new(n, blocks)
}

/// The union of the power sets of the partition blocks, minus the empty set.
pub fn canonical_generator(p: &GroundPartition) -> SetFamily {
    let n = p.ground_n();
    let mut masks = Vec::new();
    for b in p.blocks() {
        for sub in subsets_of(b.bits()) {
            if sub != 0 {
                masks.push(SubsetMask::new(sub, n).expect("subset of valid block"));
            }
        }
    }
    SetFamily::from_masks(n, masks).expect("blocks share ground")
}

/// Size of the canonical generator: `(k+r)·2^q − k` where `n = qk + r`.
pub fn canonical_size(n: u32, k: u32) -> Result<u64> {
    if n == 0 || k == 0 || k > n {
        return Err(Error::invalid(format!("need 1 <= k <= n, got n={n} k={k}")));
    }
    let q = (n / k) as u64;
    let r = (n % k) as u64;
    Ok((k as u64 + r) * (1u64 << q) - k as u64)
}

fn check_coverage_pre(f: &SetFamily, k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::invalid("k must be at least 1"));
    }
    if f.ground_n() > MAX_COVERAGE_N {
        return Err(Error::capacity(format!(
            "coverage tables need ground size <= {MAX_COVERAGE_N}, got {}",
            f.ground_n()
        )));
    }
    Ok(())
}

/// Marks every subset expressible as a disjoint union of at most `k`
/// members. Layer `i` extends layer `i-1` by one member: for each member
/// `m` we walk the subsets of its complement and push covered sets up.
pub fn enumerate_k_unions(f: &SetFamily, k: usize) -> Result<CoverageMap> {
    check_coverage_pre(f, k)?;
    let n = f.ground_n();
    let full = (1u64 << n) as u32 - 1;
    let mut cur = CoverageMap::empty(n, k);
    cur.set(0);
    for _ in 0..k {
        let mut next = cur.clone();
        for m in f.members() {
            let mb = m.bits();
            if mb == 0 {
                continue; // the empty member never extends a disjoint union
            }
            let comp = full & !mb;
            for x in subsets_of(comp) {
                if cur.covered_bits(x) {
                    next.set(x | mb);
                }
            }
        }
        if next.words == cur.words {
            break; // fixed point: further layers add nothing
        }
        cur = next;
    }
    Ok(cur)
}

/// Same table for unions that are not required to be disjoint.
pub fn enumerate_k_unions_overlapping(f: &SetFamily, k: usize) -> Result<CoverageMap> {
    check_coverage_pre(f, k)?;
    let n = f.ground_n();
    let mut cur = CoverageMap::empty(n, k);
    cur.set(0);
    for _ in 0..k {
        let mut next = cur.clone();
        for m in f.members() {
            let mb = m.bits();
            if mb == 0 {
                continue;
            }
            for (wi, &w) in cur.words.iter().enumerate() {
                let mut rest = w;
                while rest != 0 {
                    let b = rest.trailing_zeros();
                    rest &= rest - 1;
                    let x = (wi as u32) * 64 + b;
                    next.set(x | mb);
                }
            }
        }
        if next.words == cur.words {
            break;
        }
        cur = next;
    }
    Ok(cur)
}

/// True iff every subset of the ground set is a disjoint union of at most
/// `k` members of `f`.
pub fn is_k_generator(f: &SetFamily, k: usize) -> Result<bool> {
    Ok(enumerate_k_unions(f, k)?.is_full())
}

/// True iff every subset is a union (overlaps allowed) of at most `k` members.
pub fn is_k_base(f: &SetFamily, k: usize) -> Result<bool> {
    Ok(enumerate_k_unions_overlapping(f, k)?.is_full())
}

/// Smallest `m` such that `sum_{i=0}^{k} C(m, i) >= 2^n`: the size any
/// k-generator (even k-base) must reach, by counting expressions.
pub fn counting_lower_bound(n: u32, k: u32) -> u64 {
    assert!(k >= 1 && k <= n && n <= MAX_GROUND_N, "need 1 <= k <= n <= 30");
    let target = 1u128 << n;
    if k == 1 {
        // sum is 1 + m
        return (target - 1) as u64;
    }
    // Pascal row C(m, 0..=k), updated in place as m increments.
    let mut row = vec![0u128; k as usize + 1];
    row[0] = 1;
    let mut m = 0u64;
    loop {
        let sum: u128 = row.iter().sum();
        if sum >= target {
            return m;
        }
        m += 1;
        for i in (1..row.len()).rev() {
            row[i] += row[i - 1];
        }
    }
}

/// The crude closed-form bound `c0 * k * 2^{n/k}` with
/// `c0 = 2 / (2^{1/ln 2} * ln 2)`, an upper bound for the canonical size.
pub fn crude_upper_bound(n: u32, k: u32) -> f64 {
    assert!(k >= 1 && k <= n, "need 1 <= k <= n");
    let c0 = 2.0 / (2f64.powf(1.0 / std::f64::consts::LN_2) * std::f64::consts::LN_2);
    c0 * k as f64 * 2f64.powf(n as f64 / k as f64)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SectionKind {
    Lower,
    Upper,
}

/// Lower i-section: members avoiding `i`. Upper i-section: members
/// containing `i`, with `i` removed. Ground size is unchanged.
pub fn section(f: &SetFamily, i: u32, which: SectionKind) -> Result<SetFamily> {
    if i == 0 || i > f.ground_n() {
        return Err(Error::invalid(format!(
            "section index {i} outside 1..={}",
            f.ground_n()
        )));
    }
    let bit = 1u32 << (i - 1);
    let masks: Vec<SubsetMask> = match which {
        SectionKind::Lower => f
            .iter()
            .filter(|m| m.bits() & bit == 0)
            .copied()
            .collect(),
        SectionKind::Upper => f
            .iter()
            .filter(|m| m.bits() & bit != 0)
            .map(|m| SubsetMask::new(m.bits() & !bit, f.ground_n()).unwrap())
            .collect(),
    };
    SetFamily::from_masks(f.ground_n(), masks)
}
