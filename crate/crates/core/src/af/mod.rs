//! Argumentation frameworks, extensions and labelings.

mod parse;
mod semantics;

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{AfError, ParseError};

pub use parse::{parse_af, parse_extension, serialize_af};
pub use semantics::{
    compute_labeling, enumerate_semantics_bruteforce, grounded_extension, is_admissible,
    is_complete, is_conflict_free, is_stable, Semantics, BRUTE_FORCE_LIMIT,
};

/// A directed attack graph over opaque argument identifiers.
///
/// Arguments are addressed internally by their index in declaration order.
/// Attacks keep first-insertion order and carry set semantics.
#[derive(Clone, Debug, Default)]
pub struct ArgumentationFramework {
    names: Vec<String>,
    index: HashMap<String, usize>,
    attacks: Vec<(usize, usize)>,
    attack_set: HashSet<(usize, usize)>,
    attackers: Vec<Vec<usize>>,
    targets: Vec<Vec<usize>>,
}

impl PartialEq for ArgumentationFramework {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.attacks == other.attacks
    }
}

impl Eq for ArgumentationFramework {}

impl ArgumentationFramework {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a framework from names and index pairs.
    pub fn from_parts<S: Into<String>>(
        names: impl IntoIterator<Item = S>,
        attacks: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, AfError> {
        let mut af = Self::new();
        for name in names {
            af.add_argument(name)?;
        }
        for (a, b) in attacks {
            af.add_attack(a, b)?;
        }
        Ok(af)
    }

    /// Convenience constructor from `(attacker, target)` name pairs; arguments
    /// are declared in first-appearance order.
    pub fn from_named_attacks(args: &[&str], attacks: &[(&str, &str)]) -> Result<Self, AfError> {
        let mut af = Self::new();
        for a in args {
            af.add_argument(*a)?;
        }
        for (a, b) in attacks {
            let (a, b) = (af.require(a)?, af.require(b)?);
            af.add_attack(a, b)?;
        }
        Ok(af)
    }

    pub fn add_argument(&mut self, name: impl Into<String>) -> Result<usize, AfError> {
        let name = name.into();
        if name.is_empty() || name.chars().any(char::is_whitespace) {
            return Err(AfError::InvalidIdentifier(name));
        }
        if self.index.contains_key(&name) {
            return Err(AfError::DuplicateArgument(name));
        }
        let id = self.names.len();
        self.index.insert(name.clone(), id);
        self.names.push(name);
        self.attackers.push(Vec::new());
        self.targets.push(Vec::new());
        Ok(id)
    }

    /// Adds an attack; returns `false` when it was already present.
    pub fn add_attack(&mut self, attacker: usize, target: usize) -> Result<bool, AfError> {
        let n = self.names.len();
        if attacker >= n || target >= n {
            return Err(AfError::UnknownIndex(attacker.max(target)));
        }
        if !self.attack_set.insert((attacker, target)) {
            return Ok(false);
        }
        self.attacks.push((attacker, target));
        self.attackers[target].push(attacker);
        self.targets[attacker].push(target);
        Ok(true)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn num_attacks(&self) -> usize {
        self.attacks.len()
    }

    /// `|A| + |R|`, the instance size used by the benchmark buckets.
    pub fn size(&self) -> usize {
        self.len() + self.num_attacks()
    }

    pub fn name(&self, id: usize) -> &str {
        &self.names[id]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn id(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    fn require(&self, name: &str) -> Result<usize, AfError> {
        self.id(name)
            .ok_or_else(|| AfError::UnknownArgument(name.to_string()))
    }

    pub fn attacks(&self) -> &[(usize, usize)] {
        &self.attacks
    }

    pub fn attacks_pair(&self, attacker: usize, target: usize) -> bool {
        self.attack_set.contains(&(attacker, target))
    }

    pub fn attackers(&self, id: usize) -> &[usize] {
        &self.attackers[id]
    }

    pub fn targets(&self, id: usize) -> &[usize] {
        &self.targets[id]
    }

    /// The framework induced by keeping only `keep` arguments (in their
    /// original relative order) and the attacks among them.
    pub fn induced(&self, keep: &[bool]) -> Self {
        let mut remap = vec![usize::MAX; self.len()];
        let mut out = Self::new();
        for (i, name) in self.names.iter().enumerate() {
            if keep[i] {
                remap[i] = out.add_argument(name.clone()).expect("names are unique");
            }
        }
        for &(a, b) in &self.attacks {
            if keep[a] && keep[b] {
                out.add_attack(remap[a], remap[b])
                    .expect("indices are valid");
            }
        }
        out
    }

    /// A copy with the attacks filtered by `keep_attack` (indexed like [`Self::attacks`]).
    pub fn with_attacks(&self, keep_attack: &[bool]) -> Self {
        let mut out = Self::new();
        for name in &self.names {
            out.add_argument(name.clone()).expect("names are unique");
        }
        for (k, &(a, b)) in self.attacks.iter().enumerate() {
            if keep_attack[k] {
                out.add_attack(a, b).expect("indices are valid");
            }
        }
        out
    }
}

/// A set of arguments of a particular framework.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Extension {
    members: BTreeSet<usize>,
}

impl Extension {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds an extension from argument indices, checking they belong to `af`.
    pub fn from_indices(
        af: &ArgumentationFramework,
        ids: impl IntoIterator<Item = usize>,
    ) -> Result<Self, AfError> {
        let mut members = BTreeSet::new();
        for id in ids {
            if id >= af.len() {
                return Err(AfError::UnknownIndex(id));
            }
            members.insert(id);
        }
        Ok(Self { members })
    }

    pub fn from_names<S: AsRef<str>>(
        af: &ArgumentationFramework,
        names: impl IntoIterator<Item = S>,
    ) -> Result<Self, AfError> {
        let mut members = BTreeSet::new();
        for name in names {
            members.insert(af.require(name.as_ref())?);
        }
        Ok(Self { members })
    }

    pub(crate) fn from_mask(mask: u32) -> Self {
        Self {
            members: (0..32).filter(|i| mask >> i & 1 == 1).collect(),
        }
    }

    pub fn contains(&self, id: usize) -> bool {
        self.members.contains(&id)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_subset(&self, other: &Extension) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn names<'a>(&'a self, af: &'a ArgumentationFramework) -> Vec<&'a str> {
        self.iter().map(|i| af.name(i)).collect()
    }
}

/// Argument label relative to an extension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Label {
    In,
    Out,
    Undec,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Label::In => "IN",
            Label::Out => "OUT",
            Label::Undec => "UNDEC",
        })
    }
}

/// Total labeling of the arguments of a framework.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayerAssignment {
    labels: Vec<Label>,
}

impl LayerAssignment {
    pub fn from_labels(labels: Vec<Label>) -> Self {
        Self { labels }
    }

    pub fn label(&self, id: usize) -> Label {
        self.labels[id]
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
}

/// Supported instance formats.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Iccma23,
    Apx,
    Tgf,
}

impl Format {
    /// Guesses the format from a file extension (`.af`/`.i23`, `.apx`, `.tgf`).
    pub fn from_extension(ext: &str) -> Option<Self> {
        match ext.to_ascii_lowercase().as_str() {
            "af" | "i23" | "iccma" | "iccma23" => Some(Format::Iccma23),
            "apx" => Some(Format::Apx),
            "tgf" => Some(Format::Tgf),
            _ => None,
        }
    }

    pub fn file_extension(self) -> &'static str {
        match self {
            Format::Iccma23 => "af",
            Format::Apx => "apx",
            Format::Tgf => "tgf",
        }
    }
}

impl FromStr for Format {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Format::from_extension(s).ok_or_else(|| ParseError::UnknownFormat(s.to_string()))
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Iccma23 => "iccma23",
            Format::Apx => "apx",
            Format::Tgf => "tgf",
        })
    }
}
