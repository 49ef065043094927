use std::collections::BTreeSet;

use super::{ArgumentationFramework, Extension, Label, LayerAssignment};
use crate::error::AfError;

/// Largest framework accepted by [`enumerate_semantics_bruteforce`].
pub const BRUTE_FORCE_LIMIT: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Semantics {
    ConflictFree,
    Admissible,
    Complete,
    Grounded,
    Preferred,
    Stable,
}

/// IN for members, OUT for arguments attacked by a member, UNDEC otherwise.
pub fn compute_labeling(af: &ArgumentationFramework, e: &Extension) -> LayerAssignment {
    let labels = (0..af.len())
        .map(|a| {
            if e.contains(a) {
                Label::In
            } else if af.attackers(a).iter().any(|&b| e.contains(b)) {
                Label::Out
            } else {
                Label::Undec
            }
        })
        .collect();
    LayerAssignment::from_labels(labels)
}

pub fn is_conflict_free(af: &ArgumentationFramework, e: &Extension) -> bool {
    e.iter()
        .all(|a| af.targets(a).iter().all(|&b| !e.contains(b)))
}

fn attacked_by(af: &ArgumentationFramework, e: &Extension) -> Vec<bool> {
    let mut plus = vec![false; af.len()];
    for a in e.iter() {
        for &b in af.targets(a) {
            plus[b] = true;
        }
    }
    plus
}

fn defends(af: &ArgumentationFramework, plus: &[bool], a: usize) -> bool {
    af.attackers(a).iter().all(|&b| plus[b])
}

pub fn is_admissible(af: &ArgumentationFramework, e: &Extension) -> bool {
    if !is_conflict_free(af, e) {
        return false;
    }
    let plus = attacked_by(af, e);
    e.iter().all(|a| defends(af, &plus, a))
}

/// Admissible and containing every argument it defends.
pub fn is_complete(af: &ArgumentationFramework, e: &Extension) -> bool {
    if !is_admissible(af, e) {
        return false;
    }
    let plus = attacked_by(af, e);
    (0..af.len()).all(|a| e.contains(a) || !defends(af, &plus, a))
}

/// Admissible and attacking every argument outside the set.
pub fn is_stable(af: &ArgumentationFramework, e: &Extension) -> bool {
    if !is_admissible(af, e) {
        return false;
    }
    let plus = attacked_by(af, e);
    (0..af.len()).all(|a| e.contains(a) != plus[a])
}

/// Least fixed point of the defense operator.
pub fn grounded_extension(af: &ArgumentationFramework) -> Extension {
    let mut members = vec![false; af.len()];
    loop {
        let mut plus = vec![false; af.len()];
        for a in (0..af.len()).filter(|&a| members[a]) {
            for &b in af.targets(a) {
                plus[b] = true;
            }
        }
        let next: Vec<bool> = (0..af.len())
            .map(|a| af.attackers(a).iter().all(|&b| plus[b]))
            .collect();
        if next == members {
            break;
        }
        members = next;
    }
    Extension::from_indices(af, (0..af.len()).filter(|&a| members[a])).expect("indices in range")
}

/// Exhaustive subset enumeration over bitmasks. Independent of the
/// set-based checks above so it can serve as their oracle.
pub fn enumerate_semantics_bruteforce(
    af: &ArgumentationFramework,
    sigma: Semantics,
) -> Result<BTreeSet<Extension>, AfError> {
    let n = af.len();
    if n > BRUTE_FORCE_LIMIT {
        return Err(AfError::TooLarge {
            size: n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let mut attackers_of = vec![0u32; n];
    let mut targets_of = vec![0u32; n];
    for &(a, b) in af.attacks() {
        attackers_of[b] |= 1 << a;
        targets_of[a] |= 1 << b;
    }
    let full: u32 = if n == 0 { 0 } else { (1u32 << n) - 1 };
    let plus = |s: u32| {
        (0..n)
            .filter(|&a| s >> a & 1 == 1)
            .fold(0u32, |acc, a| acc | targets_of[a])
    };
    let conflict_free = |s: u32| plus(s) & s == 0;
    let defended = |s: u32| {
        let p = plus(s);
        (0..n)
            .filter(|&a| attackers_of[a] & !p == 0)
            .fold(0u32, |acc, a| acc | 1 << a)
    };
    let admissible = |s: u32| conflict_free(s) && s & !defended(s) == 0;
    let complete = |s: u32| admissible(s) && defended(s) == s;

    let masks: Vec<u32> = (0..=full).collect();
    let pick = |pred: &dyn Fn(u32) -> bool| -> Vec<u32> {
        masks.iter().copied().filter(|&s| pred(s)).collect()
    };
    let chosen: Vec<u32> = match sigma {
        Semantics::ConflictFree => pick(&conflict_free),
        Semantics::Admissible => pick(&admissible),
        Semantics::Complete => pick(&complete),
        Semantics::Stable => pick(&|s| conflict_free(s) && plus(s) == full & !s),
        Semantics::Grounded | Semantics::Preferred => {
            let co = pick(&complete);
            let minimal = sigma == Semantics::Grounded;
            co.iter()
                .copied()
                .filter(|&s| {
                    co.iter()
                        .all(|&t| t == s || if minimal { t & s != t } else { t & s != s })
                })
                .collect()
        }
    };
    Ok(chosen.into_iter().map(Extension::from_mask).collect())
}
