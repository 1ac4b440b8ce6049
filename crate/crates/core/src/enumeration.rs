//! Exhaustive overpartition enumeration, run predicates, and bijections.
//!
//! An overpartition is stored as strictly decreasing `(value, multiplicity,
//! overlined)` entries; the overline marks the final occurrence of the value.
//! A value `m` sits in a lower k-run when parts `j+1..=j+k` are all overlined
//! for some gap `j` (with `m` among them), no part `j` of any kind occurs and
//! `j+k+1` is not overlined; `j = 0` is an allowed degenerate gap. The upper
//! variant swaps the side conditions: `j` must not be overlined and `j+k+1`
//! must not occur at all.

use thiserror::Error;

/// Practical bound for exhaustive generation (object counts grow like
/// `exp(pi sqrt(n))`).
pub const ENUMERATION_BOUND: u32 = 40;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumError {
    #[error("overpartition is not in the lower {k}-run class")]
    NotLowerKRun { k: u32 },
    #[error("overpartition is not in the upper {k}-run class")]
    NotUpperKRun { k: u32 },
    #[error("invalid overpartition entries: {0}")]
    InvalidEntries(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Entry {
    pub value: u32,
    pub multiplicity: u32,
    pub overlined: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Overpartition {
    entries: Vec<Entry>,
}

impl std::fmt::Display for Overpartition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for e in &self.entries {
            for copy in 0..e.multiplicity {
                if !first {
                    write!(f, "+")?;
                }
                first = false;
                write!(f, "{}", e.value)?;
                if e.overlined && copy + 1 == e.multiplicity {
                    write!(f, "*")?;
                }
            }
        }
        Ok(())
    }
}

impl Overpartition {
    pub fn empty() -> Self {
        Overpartition { entries: Vec::new() }
    }

    /// Build from `(value, multiplicity, overlined)` triples, which must have
    /// strictly decreasing positive values and positive multiplicities.
    pub fn from_entries(triples: &[(u32, u32, bool)]) -> Result<Self, EnumError> {
        let mut entries = Vec::with_capacity(triples.len());
        let mut prev: Option<u32> = None;
        for &(value, multiplicity, overlined) in triples {
            if value == 0 {
                return Err(EnumError::InvalidEntries("part value must be >= 1".into()));
            }
            if multiplicity == 0 {
                return Err(EnumError::InvalidEntries("multiplicity must be >= 1".into()));
            }
            if let Some(p) = prev {
                if value >= p {
                    return Err(EnumError::InvalidEntries(
                        "values must be strictly decreasing".into(),
                    ));
                }
            }
            prev = Some(value);
            entries.push(Entry {
                value,
                multiplicity,
                overlined,
            });
        }
        Ok(Overpartition { entries })
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn size(&self) -> u64 {
        self.entries
            .iter()
            .map(|e| e.value as u64 * e.multiplicity as u64)
            .sum()
    }

    pub fn parts_count(&self) -> u64 {
        self.entries.iter().map(|e| e.multiplicity as u64).sum()
    }

    pub fn overline_count(&self) -> usize {
        self.entries.iter().filter(|e| e.overlined).count()
    }

    pub fn max_value(&self) -> u32 {
        self.entries.first().map_or(0, |e| e.value)
    }
}

/// Per-value occupancy and overline flags, padded so run lookups up to
/// `max_value + k + 1` stay in bounds.
fn value_flags(entries: &[Entry], pad: usize) -> (Vec<bool>, Vec<bool>) {
    let maxv = entries.first().map_or(0, |e| e.value) as usize;
    let mut present = vec![false; maxv + pad + 2];
    let mut over = vec![false; maxv + pad + 2];
    for e in entries {
        present[e.value as usize] = true;
        if e.overlined {
            over[e.value as usize] = true;
        }
    }
    (present, over)
}

fn lower_ok(entries: &[Entry], k: usize) -> bool {
    let (present, over) = value_flags(entries, k);
    for e in entries.iter().filter(|e| e.overlined) {
        let m = e.value as usize;
        let found = (m.saturating_sub(k)..m).any(|j| {
            (j + 1..=j + k).all(|v| over[v])
                && (j == 0 || !present[j])
                && !over[j + k + 1]
        });
        if !found {
            return false;
        }
    }
    true
}

fn upper_ok(entries: &[Entry], k: usize) -> bool {
    let (present, over) = value_flags(entries, k);
    for e in entries.iter().filter(|e| e.overlined) {
        let m = e.value as usize;
        let found = (m.saturating_sub(k)..m).any(|j| {
            (j + 1..=j + k).all(|v| over[v])
                && (j == 0 || !over[j])
                && !present[j + k + 1]
        });
        if !found {
            return false;
        }
    }
    true
}

pub fn is_lower_k_run(op: &Overpartition, k: u32) -> bool {
    assert!(k >= 1, "run length k must be >= 1");
    lower_ok(&op.entries, k as usize)
}

pub fn is_upper_k_run(op: &Overpartition, k: u32) -> bool {
    assert!(k >= 1, "run length k must be >= 1");
    upper_ok(&op.entries, k as usize)
}

/// Does some window of `k` consecutive values all occur as parts?
fn has_k_sequence(entries: &[Entry], k: usize) -> bool {
    let (present, _) = value_flags(entries, 0);
    let mut run = 0usize;
    for &p in present.iter().skip(1) {
        if p {
            run += 1;
            if run >= k {
                return true;
            }
        } else {
            run = 0;
        }
    }
    false
}

fn visit_overpartitions(n: u32, f: &mut impl FnMut(&[Entry])) {
    assert!(
        n <= ENUMERATION_BOUND,
        "exhaustive enumeration is bounded at n = {ENUMERATION_BOUND}"
    );
    fn rec(rem: u32, max_v: u32, stack: &mut Vec<Entry>, f: &mut impl FnMut(&[Entry])) {
        if rem == 0 {
            f(stack);
            return;
        }
        let top = max_v.min(rem);
        for value in (1..=top).rev() {
            for multiplicity in 1..=(rem / value) {
                for overlined in [false, true] {
                    stack.push(Entry {
                        value,
                        multiplicity,
                        overlined,
                    });
                    rec(rem - value * multiplicity, value - 1, stack, f);
                    stack.pop();
                }
            }
        }
    }
    let mut stack = Vec::new();
    rec(n, n, &mut stack, f);
}

fn visit_partitions(n: u32, f: &mut impl FnMut(&[Entry])) {
    assert!(
        n <= ENUMERATION_BOUND,
        "exhaustive enumeration is bounded at n = {ENUMERATION_BOUND}"
    );
    fn rec(rem: u32, max_v: u32, stack: &mut Vec<Entry>, f: &mut impl FnMut(&[Entry])) {
        if rem == 0 {
            f(stack);
            return;
        }
        let top = max_v.min(rem);
        for value in (1..=top).rev() {
            for multiplicity in 1..=(rem / value) {
                stack.push(Entry {
                    value,
                    multiplicity,
                    overlined: false,
                });
                rec(rem - value * multiplicity, value - 1, stack, f);
                stack.pop();
            }
        }
    }
    let mut stack = Vec::new();
    rec(n, n, &mut stack, f);
}

/// All overpartitions of `n`, largest part descending, in a fixed order.
pub fn enumerate_overpartitions(n: u32) -> Vec<Overpartition> {
    let mut out = Vec::new();
    visit_overpartitions(n, &mut |entries| {
        out.push(Overpartition {
            entries: entries.to_vec(),
        })
    });
    out
}

/// All plain partitions of `n` (no overlines), largest part descending.
pub fn enumerate_partitions(n: u32) -> Vec<Overpartition> {
    let mut out = Vec::new();
    visit_partitions(n, &mut |entries| {
        out.push(Overpartition {
            entries: entries.to_vec(),
        })
    });
    out
}

/// Number of lower k-run overpartitions of `n`, by exhaustive generation.
pub fn count_lower(n: u32, k: u32) -> u64 {
    assert!(k >= 1);
    let mut count = 0u64;
    visit_overpartitions(n, &mut |entries| {
        if lower_ok(entries, k as usize) {
            count += 1;
        }
    });
    count
}

/// Number of upper k-run overpartitions of `n`, by exhaustive generation.
pub fn count_upper(n: u32, k: u32) -> u64 {
    assert!(k >= 1);
    let mut count = 0u64;
    visit_overpartitions(n, &mut |entries| {
        if upper_ok(entries, k as usize) {
            count += 1;
        }
    });
    count
}

/// Number of lower k-run overpartitions of `n` with exactly `ell` parts.
pub fn count_lower_by_parts(n: u32, ell: u32, k: u32) -> u64 {
    assert!(k >= 1);
    let mut count = 0u64;
    visit_overpartitions(n, &mut |entries| {
        let parts: u64 = entries.iter().map(|e| e.multiplicity as u64).sum();
        if parts == ell as u64 && lower_ok(entries, k as usize) {
            count += 1;
        }
    });
    count
}

/// Number of plain partitions of `n` with no `k` consecutive values all
/// occurring as parts.
pub fn count_no_k_sequence(n: u32, k: u32) -> u64 {
    assert!(k >= 1);
    let mut count = 0u64;
    visit_partitions(n, &mut |entries| {
        if !has_k_sequence(entries, k as usize) {
            count += 1;
        }
    });
    count
}

/// Maximal intervals `[a, b]` of consecutive values that occur as parts.
fn blocks(present: &[bool]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    for v in 1..present.len() {
        match (present[v], start) {
            (true, None) => start = Some(v),
            (false, Some(a)) => {
                out.push((a, v - 1));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(a) = start {
        out.push((a, present.len() - 1));
    }
    out
}

fn rebuild(mult: &[u32], over: &[bool]) -> Overpartition {
    let mut entries = Vec::new();
    for v in (1..mult.len()).rev() {
        if mult[v] > 0 {
            entries.push(Entry {
                value: v as u32,
                multiplicity: mult[v],
                overlined: over[v],
            });
        }
    }
    Overpartition { entries }
}

fn shift_overlines(op: &Overpartition, k: usize, to_upper: bool) -> Overpartition {
    let maxv = op.max_value() as usize;
    let mut mult = vec![0u32; maxv + 2];
    let mut over = vec![false; maxv + 2];
    for e in &op.entries {
        mult[e.value as usize] = e.multiplicity;
        over[e.value as usize] = e.overlined;
    }
    let present: Vec<bool> = mult.iter().map(|&m| m > 0).collect();
    for (a, b) in blocks(&present) {
        if !(a..=b).any(|v| over[v]) {
            continue;
        }
        // In a lower class the overlines of a block are exactly its bottom k
        // values; in an upper class, exactly its top k.
        let (from, to) = if to_upper {
            ((a, a + k - 1), (b + 1 - k, b))
        } else {
            ((b + 1 - k, b), (a, a + k - 1))
        };
        debug_assert!(
            (a..=b).all(|v| over[v] == (from.0 <= v && v <= from.1)),
            "run structure violated in block [{a}, {b}]"
        );
        for v in from.0..=from.1 {
            over[v] = false;
        }
        for v in to.0..=to.1 {
            over[v] = true;
        }
    }
    rebuild(&mult, &over)
}

/// Overline-shift bijection from the lower k-run class to the upper k-run
/// class: in every block of consecutive parts the k overlines move from the
/// bottom k values to the top k. Size, part count and overline count are
/// preserved.
pub fn lower_to_upper(op: &Overpartition, k: u32) -> Result<Overpartition, EnumError> {
    if !is_lower_k_run(op, k) {
        return Err(EnumError::NotLowerKRun { k });
    }
    Ok(shift_overlines(op, k as usize, true))
}

/// Inverse of [`lower_to_upper`]: overlines move from the top of each block
/// back to the bottom.
pub fn upper_to_lower(op: &Overpartition, k: u32) -> Result<Overpartition, EnumError> {
    if !is_upper_k_run(op, k) {
        return Err(EnumError::NotUpperKRun { k });
    }
    Ok(shift_overlines(op, k as usize, false))
}

/// Ferrers-diagram conjugation with overline marks carried on bottom-right
/// corners: an overline on value `v` transposes to an overline on the
/// conjugate value `#parts >= v`.
pub fn conjugate(op: &Overpartition) -> Overpartition {
    if op.entries.is_empty() {
        return Overpartition::empty();
    }
    let maxv = op.max_value() as usize;
    // count_ge[v] = number of parts (with multiplicity) of value >= v
    let mut count_ge = vec![0u32; maxv + 2];
    for e in &op.entries {
        count_ge[e.value as usize] += e.multiplicity;
    }
    for v in (1..=maxv).rev() {
        count_ge[v] += count_ge[v + 1];
    }
    let conj_maxv = count_ge[1] as usize;
    let mut mult = vec![0u32; conj_maxv + 2];
    for i in 1..=maxv {
        mult[count_ge[i] as usize] += 1;
    }
    let mut over = vec![false; conj_maxv + 2];
    for e in op.entries.iter().filter(|e| e.overlined) {
        over[count_ge[e.value as usize] as usize] = true;
    }
    rebuild(&mult, &over)
}

/// Insert a non-overlined part 1; maps upper k-run overpartitions of `n`
/// injectively into upper k-run overpartitions of `n + 1`.
pub fn mono_inject_n(op: &Overpartition, k: u32) -> Result<Overpartition, EnumError> {
    if !is_upper_k_run(op, k) {
        return Err(EnumError::NotUpperKRun { k });
    }
    let mut entries = op.entries.clone();
    match entries.last_mut() {
        Some(e) if e.value == 1 => e.multiplicity += 1,
        _ => entries.push(Entry {
            value: 1,
            multiplicity: 1,
            overlined: false,
        }),
    }
    Ok(Overpartition { entries })
}

/// Remove the overline from the top of every (k+1)-run; maps lower
/// (k+1)-run overpartitions injectively into lower k-run overpartitions of
/// the same size.
pub fn mono_inject_k(op: &Overpartition, k: u32) -> Result<Overpartition, EnumError> {
    if !is_lower_k_run(op, k + 1) {
        return Err(EnumError::NotLowerKRun { k: k + 1 });
    }
    let maxv = op.max_value() as usize;
    let mut mult = vec![0u32; maxv + 2];
    let mut over = vec![false; maxv + 2];
    for e in &op.entries {
        mult[e.value as usize] = e.multiplicity;
        over[e.value as usize] = e.overlined;
    }
    let present: Vec<bool> = mult.iter().map(|&m| m > 0).collect();
    let k = k as usize;
    for (a, b) in blocks(&present) {
        if (a..=b).any(|v| over[v]) {
            debug_assert!(b >= a + k && over[a + k]);
            over[a + k] = false;
        }
    }
    Ok(rebuild(&mult, &over))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn op(triples: &[(u32, u32, bool)]) -> Overpartition {
        Overpartition::from_entries(triples).unwrap()
    }

    #[test]
    fn entry_validation() {
        assert!(Overpartition::from_entries(&[(3, 1, true), (3, 1, false)]).is_err());
        assert!(Overpartition::from_entries(&[(0, 1, false)]).is_err());
        assert!(Overpartition::from_entries(&[(2, 0, false)]).is_err());
        let v = op(&[(4, 2, true), (1, 3, false)]);
        assert_eq!(v.size(), 11);
        assert_eq!(v.parts_count(), 5);
        assert_eq!(v.overline_count(), 1);
    }

    #[test]
    fn lower_run_predicate_examples() {
        // 4* + 3* is a lower 2-run (j = 2 gap: no part 2, no overlined 5)
        assert!(is_lower_k_run(&op(&[(4, 1, true), (3, 1, true)]), 2));
        // overline-free overpartitions always qualify
        assert!(is_lower_k_run(&op(&[(5, 1, false), (3, 2, false)]), 1));
        assert!(is_lower_k_run(&op(&[(5, 1, false), (3, 2, false)]), 3));
        // 2* + 1 fails for k = 1: the part 1 blocks the gap below 2
        assert!(!is_lower_k_run(&op(&[(2, 1, true), (1, 1, false)]), 1));
        // single overlined 1* is a valid lower 1-run via the degenerate gap
        assert!(is_lower_k_run(&op(&[(1, 1, true)]), 1));
        assert!(is_lower_k_run(&Overpartition::empty(), 2));
    }

    #[test]
    fn upper_run_predicate_examples() {
        // 2 + 1* fails for k = 1 (a part of size j+k+1 = 2 exists) but is a
        // valid lower 1-run.
        let t = op(&[(2, 1, false), (1, 1, true)]);
        assert!(!is_upper_k_run(&t, 1));
        assert!(is_lower_k_run(&t, 1));
        // 2* + 1 is a valid upper 1-run (j = 1 gap: 1 not overlined, no 3s)
        assert!(is_upper_k_run(&op(&[(2, 1, true), (1, 1, false)]), 1));
        assert!(is_upper_k_run(&Overpartition::empty(), 3));
    }

    #[test]
    fn enumerate_base_cases() {
        let all0 = enumerate_overpartitions(0);
        assert_eq!(all0, vec![Overpartition::empty()]);
        // overpartitions of 2: 2, 2*, 1+1, 1+1*
        assert_eq!(enumerate_overpartitions(2).len(), 4);
        // partitions of 4: 4, 31, 22, 211, 1111
        assert_eq!(enumerate_partitions(4).len(), 5);
    }

    #[test]
    fn lower_one_run_count_at_two() {
        let hits: Vec<Overpartition> = enumerate_overpartitions(2)
            .into_iter()
            .filter(|o| is_lower_k_run(o, 1))
            .collect();
        let expect: BTreeSet<Overpartition> = [
            op(&[(2, 1, false)]),
            op(&[(2, 1, true)]),
            op(&[(1, 2, false)]),
            op(&[(1, 2, true)]),
        ]
        .into_iter()
        .collect();
        assert_eq!(hits.len(), 4);
        assert_eq!(hits.into_iter().collect::<BTreeSet<_>>(), expect);
    }

    #[test]
    fn lower_two_run_witnesses_at_seven() {
        assert_eq!(count_lower(7, 2), 22);
        let overlined: BTreeSet<Overpartition> = enumerate_overpartitions(7)
            .into_iter()
            .filter(|o| is_lower_k_run(o, 2) && o.overline_count() > 0)
            .collect();
        let expect: BTreeSet<Overpartition> = [
            op(&[(4, 1, true), (3, 1, true)]),
            op(&[(4, 1, false), (2, 1, true), (1, 1, true)]),
            op(&[(3, 1, true), (2, 2, true)]),
            op(&[(3, 1, false), (2, 1, true), (1, 2, true)]),
            op(&[(2, 3, true), (1, 1, true)]),
            op(&[(2, 2, true), (1, 3, true)]),
            op(&[(2, 1, true), (1, 5, true)]),
        ]
        .into_iter()
        .collect();
        assert_eq!(overlined, expect);
    }

    #[test]
    fn lower_and_upper_classes_are_equinumerous() {
        for n in 0..=16 {
            for k in 1..=4 {
                assert_eq!(
                    count_lower(n, k),
                    count_upper(n, k),
                    "count mismatch at n={n} k={k}"
                );
            }
        }
    }

    #[test]
    fn count_without_sequences_examples() {
        assert_eq!(count_no_k_sequence(3, 2), 2); // 3 and 1+1+1
        assert_eq!(count_no_k_sequence(0, 2), 1);
        for n in 0..=15u32 {
            let p = enumerate_partitions(n).len() as u64;
            assert_eq!(count_no_k_sequence(n, n + 1), p, "k > n must not constrain");
        }
    }

    #[test]
    fn overline_shift_examples() {
        // 2* + 1*: the block [1,2] already has its overlines at both ends
        let t = op(&[(2, 1, true), (1, 1, true)]);
        assert_eq!(lower_to_upper(&t, 2).unwrap(), t);
        // overline-free inputs are fixed points
        let p = op(&[(5, 1, false), (4, 1, false), (1, 2, false)]);
        assert_eq!(lower_to_upper(&p, 3).unwrap(), p);
        // 2 + 1* for k = 1 shifts the overline to the top of the block
        let low = op(&[(2, 1, false), (1, 1, true)]);
        let up = op(&[(2, 1, true), (1, 1, false)]);
        assert_eq!(lower_to_upper(&low, 1).unwrap(), up);
        assert_eq!(upper_to_lower(&up, 1).unwrap(), low);
        // non-members are rejected
        assert_eq!(
            lower_to_upper(&op(&[(2, 1, true), (1, 1, false)]), 1),
            Err(EnumError::NotLowerKRun { k: 1 })
        );
    }

    #[test]
    fn overline_shift_is_a_size_preserving_bijection() {
        for n in 0..=12u32 {
            for k in 1..=3u32 {
                let mut images = BTreeSet::new();
                for o in enumerate_overpartitions(n) {
                    if !is_lower_k_run(&o, k) {
                        continue;
                    }
                    let im = lower_to_upper(&o, k).unwrap();
                    assert!(is_upper_k_run(&im, k), "image not upper: {o} -> {im}");
                    assert_eq!(im.size(), o.size());
                    assert_eq!(im.parts_count(), o.parts_count());
                    assert_eq!(im.overline_count(), o.overline_count());
                    assert_eq!(upper_to_lower(&im, k).unwrap(), o, "round trip failed");
                    assert!(images.insert(im), "image repeated");
                }
                assert_eq!(images.len() as u64, count_upper(n, k));
            }
        }
    }

    #[test]
    fn conjugate_marked_diagram_example() {
        // 6* + 4* + 1 + 1 + 1*  <->  5* + 2 + 2 + 2* + 1 + 1*
        let a = op(&[(6, 1, true), (4, 1, true), (1, 3, true)]);
        let b = op(&[(5, 1, true), (2, 3, true), (1, 2, true)]);
        assert_eq!(conjugate(&a), b);
        assert_eq!(conjugate(&b), a);
        assert_eq!(conjugate(&Overpartition::empty()), Overpartition::empty());
    }

    #[test]
    fn conjugation_is_an_involution() {
        for n in 0..=14u32 {
            for o in enumerate_overpartitions(n) {
                let c = conjugate(&o);
                assert_eq!(c.size(), o.size());
                assert_eq!(c.overline_count(), o.overline_count());
                assert_eq!(conjugate(&c), o, "involution failed on {o}");
            }
        }
    }

    #[test]
    fn conjugation_sends_lower_one_runs_to_repeated_overline_class() {
        // Image class: every overlined value other than the largest part
        // occurs at least twice.
        let in_image_class = |o: &Overpartition| {
            o.entries().iter().all(|e| {
                !e.overlined || e.value == o.max_value() || e.multiplicity >= 2
            })
        };
        for n in 0..=12u32 {
            let image: BTreeSet<Overpartition> = enumerate_overpartitions(n)
                .into_iter()
                .filter(|o| is_lower_k_run(o, 1))
                .map(|o| conjugate(&o))
                .collect();
            let class: BTreeSet<Overpartition> = enumerate_overpartitions(n)
                .into_iter()
                .filter(in_image_class)
                .collect();
            assert_eq!(image, class, "class mismatch at n={n}");
        }
    }

    #[test]
    fn monotonicity_injections() {
        assert_eq!(
            mono_inject_n(&Overpartition::empty(), 2).unwrap(),
            op(&[(1, 1, false)])
        );
        assert_eq!(
            mono_inject_n(&op(&[(2, 1, true), (1, 1, false)]), 1).unwrap(),
            op(&[(2, 1, true), (1, 2, false)])
        );
        // 2* + 1* is a lower 2-run; dropping the top overline gives 2 + 1*
        assert_eq!(
            mono_inject_k(&op(&[(2, 1, true), (1, 1, true)]), 1).unwrap(),
            op(&[(2, 1, false), (1, 1, true)])
        );
        assert!(mono_inject_k(&op(&[(2, 1, true), (1, 1, false)]), 1).is_err());
        assert!(mono_inject_n(&op(&[(2, 1, false), (1, 1, true)]), 1).is_err());
    }

    #[test]
    fn injections_are_injective_and_land_in_class() {
        for n in 0..=12u32 {
            for k in 1..=3u32 {
                let mut images_n = BTreeSet::new();
                let mut images_k = BTreeSet::new();
                for o in enumerate_overpartitions(n) {
                    if is_upper_k_run(&o, k) {
                        let im = mono_inject_n(&o, k).unwrap();
                        assert!(is_upper_k_run(&im, k));
                        assert_eq!(im.size(), o.size() + 1);
                        assert!(images_n.insert(im));
                    }
                    if is_lower_k_run(&o, k + 1) {
                        let im = mono_inject_k(&o, k).unwrap();
                        assert!(is_lower_k_run(&im, k), "{o} -> {im} not lower {k}-run");
                        assert_eq!(im.size(), o.size());
                        assert!(images_k.insert(im));
                    }
                }
                // The injections witness the two monotonicity inequalities.
                assert!(count_upper(n, k) <= count_upper(n + 1, k));
                assert!(count_lower(n, k + 1) <= count_lower(n, k));
            }
        }
    }

    #[test]
    fn by_parts_refinement_sums_to_total() {
        for n in 0..=10u32 {
            for k in 1..=2u32 {
                let total: u64 = (0..=n).map(|ell| count_lower_by_parts(n, ell, k)).sum();
                assert_eq!(total, count_lower(n, k));
            }
        }
    }
}
