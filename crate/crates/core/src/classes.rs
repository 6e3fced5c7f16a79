//! Harvesting the residues of Seidel characteristic polynomials modulo
//! `2^e` from random samples, with an on-disk cache.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fs;
use std::path::{Path, PathBuf};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modtype::{class_bound, ResidueVector};
use crate::seidel::SeidelMatrix;

/// Residues seen so far for order `n` modulo `2^e`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceClassSet {
    pub n: usize,
    pub e: u32,
    pub seed: u64,
    pub samples: u64,
    pub complete: bool,
    pub classes: BTreeSet<ResidueVector>,
}

impl CongruenceClassSet {
    pub fn empty(n: usize, e: u32, seed: u64) -> Self {
        CongruenceClassSet {
            n,
            e,
            seed,
            samples: 0,
            complete: false,
            classes: BTreeSet::new(),
        }
    }

    /// The exact class set of a small order, from every Seidel matrix on
    /// `n ≤ 7` vertices. Marked complete.
    pub fn exhaustive(n: usize, e: u32) -> Result<Self> {
        class_bound(e)?;
        let mask = (1u32 << e) - 1;
        let mut set = CongruenceClassSet::empty(n, e, 0);
        for s in crate::seidel::enumerate_all_seidel(n)? {
            let residues = s.charpoly_mod_2_32().into_iter().map(|c| c & mask).collect();
            set.classes.insert(ResidueVector { n, e, residues });
            set.samples += 1;
        }
        set.complete = true;
        Ok(set)
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn target(&self) -> usize {
        class_bound(self.e).unwrap_or(usize::MAX)
    }

    pub fn contains(&self, r: &ResidueVector) -> bool {
        self.classes.contains(r)
    }

    /// Error unless the set reached the theoretical bound.
    pub fn require_complete(&self) -> Result<()> {
        if self.complete {
            Ok(())
        } else {
            Err(Error::IncompleteClasses {
                n: self.n,
                e: self.e,
                found: self.len(),
                target: self.target(),
            })
        }
    }

    /// Prefix tree over descending residues, used to prune enumerations.
    pub fn prefix_tree(&self) -> PrefixTree {
        PrefixTree::build(self)
    }

    pub fn cache_path(dir: &Path, n: usize, e: u32) -> PathBuf {
        dir.join(format!("classes_n{}_e{}.json", n, e))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        Ok(serde_json::from_str(&text)?)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        if let Some(parent) = path.parent() {
            fs::create_dir_all(parent)?;
        }
        let tmp = path.with_extension("json.tmp");
        fs::write(&tmp, serde_json::to_string(self)?)?;
        fs::rename(&tmp, path)?;
        Ok(())
    }

    /// Residue vector of sample number `index` in the stream for `seed`.
    pub fn sample(n: usize, e: u32, seed: u64, index: u64) -> ResidueVector {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(index);
        let s = SeidelMatrix::random_with(n, &mut rng);
        let mask = (1u32 << e) - 1;
        let residues = if e <= 8 {
            s.charpoly_mod_256().into_iter().map(|c| c as u32 & mask).collect()
        } else {
            s.charpoly_mod_2_32().into_iter().map(|c| c & mask).collect()
        };
        ResidueVector { n, e, residues }
    }

    /// Draw further samples until the bound is met or `max_samples` have been
    /// drawn in total. Sample `i` depends only on `(seed, i)`, so the result
    /// is reproducible and can be resumed.
    pub fn extend(&mut self, max_samples: u64, jobs: usize) {
        let target = self.target();
        let jobs = jobs.max(1);
        const BATCH: u64 = 64;
        while !self.complete && self.samples < max_samples {
            let end = (self.samples + BATCH * jobs as u64).min(max_samples);
            let results = sample_range(self.n, self.e, self.seed, self.samples, end, jobs);
            for r in results {
                self.samples += 1;
                self.classes.insert(r);
                if self.classes.len() >= target {
                    self.complete = true;
                    break;
                }
            }
        }
    }
}

fn sample_range(n: usize, e: u32, seed: u64, start: u64, end: u64, jobs: usize) -> Vec<ResidueVector> {
    if jobs <= 1 || end - start < 2 {
        return (start..end)
            .map(|i| CongruenceClassSet::sample(n, e, seed, i))
            .collect();
    }
    let mut parts: Vec<Vec<(u64, ResidueVector)>> = Vec::new();
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..jobs as u64)
            .map(|j| {
                scope.spawn(move || {
                    (start + j..end)
                        .step_by(jobs)
                        .map(|i| (i, CongruenceClassSet::sample(n, e, seed, i)))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        for h in handles {
            parts.push(h.join().expect("sampling thread panicked"));
        }
    });
    let mut all: Vec<(u64, ResidueVector)> = parts.into_iter().flatten().collect();
    all.sort_by_key(|(i, _)| *i);
    all.into_iter().map(|(_, r)| r).collect()
}

/// Options for [`collect_classes`].
#[derive(Clone, Debug)]
pub struct HarvestOptions {
    pub seed: u64,
    pub max_samples: u64,
    pub jobs: usize,
    pub cache_dir: Option<PathBuf>,
}

impl Default for HarvestOptions {
    fn default() -> Self {
        HarvestOptions {
            seed: 1,
            max_samples: 2_000_000,
            jobs: 1,
            cache_dir: None,
        }
    }
}

/// Harvest the classes for odd `n` modulo `2^e`, reusing and updating the
/// cache when one is configured. Orders up to 5 are enumerated exhaustively.
pub fn collect_classes(n: usize, e: u32, opts: &HarvestOptions) -> Result<CongruenceClassSet> {
    class_bound(e)?;
    if n.is_multiple_of(2) {
        return Err(Error::Invalid(format!(
            "the class bound applies to odd orders, got {}",
            n
        )));
    }
    if n <= 5 {
        return CongruenceClassSet::exhaustive(n, e);
    }
    let path = opts
        .cache_dir
        .as_ref()
        .map(|d| CongruenceClassSet::cache_path(d, n, e));
    let mut set = match &path {
        Some(p) if p.exists() => {
            let cached = CongruenceClassSet::load(p)?;
            if cached.n != n || cached.e != e {
                return Err(Error::Invalid(format!("cache {} is for another order", p.display())));
            }
            if cached.seed == opts.seed || cached.complete {
                cached
            } else {
                CongruenceClassSet::empty(n, e, opts.seed)
            }
        }
        _ => CongruenceClassSet::empty(n, e, opts.seed),
    };
    if set.complete {
        return Ok(set);
    }
    let before = set.samples;
    set.extend(opts.max_samples, opts.jobs);
    if let Some(p) = &path {
        if set.samples != before {
            set.save(p)?;
        }
    }
    Ok(set)
}

/// Descending-residue prefix tree of a class set.
///
/// Node `k` at depth `d` stores which residues may follow the prefix it
/// represents as the next descending coefficient.
#[derive(Clone, Debug)]
pub struct PrefixTree {
    pub e: u32,
    pub n: usize,
    nodes: Vec<HashMap<u32, usize>>,
    leaves: HashSet<usize>,
}

impl PrefixTree {
    fn build(set: &CongruenceClassSet) -> Self {
        let mut nodes: Vec<HashMap<u32, usize>> = vec![HashMap::new()];
        let mut leaves = HashSet::new();
        for class in &set.classes {
            let mut at = 0;
            for r in class.descending() {
                at = match nodes[at].get(&r) {
                    Some(&next) => next,
                    None => {
                        nodes.push(HashMap::new());
                        let id = nodes.len() - 1;
                        nodes[at].insert(r, id);
                        id
                    }
                };
            }
            leaves.insert(at);
        }
        PrefixTree {
            e: set.e,
            n: set.n,
            nodes,
            leaves,
        }
    }

    pub const ROOT: usize = 0;

    /// Child of `node` along residue `r`.
    pub fn step(&self, node: usize, r: u32) -> Option<usize> {
        self.nodes[node].get(&r).copied()
    }

    pub fn is_leaf(&self, node: usize) -> bool {
        self.leaves.contains(&node)
    }

    pub fn modulus(&self) -> u32 {
        1 << self.e
    }
}
