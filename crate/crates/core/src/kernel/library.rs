use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

use thiserror::Error;

use super::check::check_proof;
use super::proof::{Proof, ProofFileError};

/// Checked proofs available to `lemma` citations. Entries without
/// assumptions are theorems; entries with assumptions are derived rules.
#[derive(Clone, Debug, Default)]
pub struct TheoremLibrary {
    entries: BTreeMap<String, Proof>,
}

#[derive(Debug, Error)]
pub enum LibraryError {
    #[error("proof {name} rejected: {report}")]
    Rejected { name: String, report: String },
    #[error("a different proof named {0} is already registered")]
    Duplicate(String),
    #[error("proofs {0:?} cite each other in a cycle or cite missing lemmas")]
    Unresolved(Vec<String>),
    #[error("{path}: {source}")]
    File {
        path: PathBuf,
        source: ProofFileError,
    },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl TheoremLibrary {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, name: &str) -> Option<&Proof> {
        self.entries.get(name)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.entries.contains_key(name)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Proof> {
        self.entries.values()
    }

    /// Adds a proof after checking it against the current entries.
    /// Registering an identical proof twice is a no-op.
    pub fn register(&mut self, proof: Proof) -> Result<(), LibraryError> {
        if let Some(existing) = self.entries.get(&proof.name) {
            return if *existing == proof {
                Ok(())
            } else {
                Err(LibraryError::Duplicate(proof.name))
            };
        }
        let report = check_proof(&proof, self);
        if !report.accepted() {
            return Err(LibraryError::Rejected {
                name: proof.name,
                report: report.to_string(),
            });
        }
        self.entries.insert(proof.name.clone(), proof);
        Ok(())
    }

    /// Registers proofs in an order where every cited lemma comes first.
    pub fn register_all(&mut self, proofs: Vec<Proof>) -> Result<(), LibraryError> {
        let mut pending = proofs;
        while !pending.is_empty() {
            let batch_names: BTreeSet<String> = pending.iter().map(|p| p.name.clone()).collect();
            let (ready, blocked): (Vec<_>, Vec<_>) = pending.into_iter().partition(|p| {
                p.lemma_dependencies()
                    .iter()
                    .all(|d| self.contains(d) || !batch_names.contains(*d))
            });
            if ready.is_empty() {
                return Err(LibraryError::Unresolved(
                    blocked.into_iter().map(|p| p.name).collect(),
                ));
            }
            for p in ready {
                self.register(p)?;
            }
            pending = blocked;
        }
        Ok(())
    }

    /// Loads every `*.rlproof` and `*.proof` file of a directory.
    pub fn load_dir(&mut self, dir: &Path) -> Result<(), LibraryError> {
        let io = |source| LibraryError::Io {
            path: dir.to_path_buf(),
            source,
        };
        let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)
            .map_err(io)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| {
                p.extension()
                    .is_some_and(|x| x == "rlproof" || x == "proof")
            })
            .collect();
        paths.sort();
        let mut proofs = Vec::with_capacity(paths.len());
        for path in paths {
            let text = std::fs::read_to_string(&path).map_err(|source| LibraryError::Io {
                path: path.clone(),
                source,
            })?;
            proofs.push(Proof::parse(&text).map_err(|source| LibraryError::File { path, source })?);
        }
        self.register_all(proofs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const RULE: &str = "\
system: RL
name: mp_rule
assume 1: Α
assume 2: Α -> Β
1: Α | assume 1
2: Α -> Β | assume 2
3: Β | mp 1 2
qed: 3
";

    const USER: &str = "\
system: RL
name: uses_rule
assume 1: a
assume 2: a -> b
1: a | assume 1
2: a -> b | assume 2
3: b | lemma mp_rule 1 2
qed: 3
";

    #[test]
    fn registration_is_idempotent_for_identical_proofs() {
        let mut lib = TheoremLibrary::new();
        let p = Proof::parse(RULE).unwrap();
        lib.register(p.clone()).unwrap();
        lib.register(p.clone()).unwrap();
        assert_eq!(lib.len(), 1);
        let mut other = p;
        other.lines[2].step = Some(1);
        assert!(matches!(
            lib.register(other),
            Err(LibraryError::Duplicate(_))
        ));
    }

    #[test]
    fn unchecked_proofs_are_refused() {
        let mut lib = TheoremLibrary::new();
        let bad = Proof::parse(&RULE.replace("3: Β | mp 1 2", "3: Β | mp 2 1")).unwrap();
        assert!(matches!(
            lib.register(bad),
            Err(LibraryError::Rejected { .. })
        ));
        assert!(lib.is_empty());
    }

    #[test]
    fn dependency_order_is_resolved() {
        let mut lib = TheoremLibrary::new();
        let proofs = vec![Proof::parse(USER).unwrap(), Proof::parse(RULE).unwrap()];
        lib.register_all(proofs).unwrap();
        assert_eq!(lib.names().collect::<Vec<_>>(), ["mp_rule", "uses_rule"]);
    }

    #[test]
    fn missing_lemma_is_rejected() {
        let mut lib = TheoremLibrary::new();
        assert!(matches!(
            lib.register_all(vec![Proof::parse(USER).unwrap()]),
            Err(LibraryError::Rejected { .. })
        ));
    }

    #[test]
    fn load_from_directory() {
        let dir = tempfile::tempdir().unwrap();
        std::fs::write(dir.path().join("a.rlproof"), USER).unwrap();
        std::fs::write(dir.path().join("b.rlproof"), RULE).unwrap();
        std::fs::write(dir.path().join("notes.txt"), "ignored").unwrap();
        let mut lib = TheoremLibrary::new();
        lib.load_dir(dir.path()).unwrap();
        assert_eq!(lib.len(), 2);
    }
}
