//! Exhaustive search over freely reduced braid words for leakage-free (and
//! potentially entangling) gates.
//!
//! Pipeline: enumerate words depth-first with an incremental product stack
//! (one 5x5 multiply per visited word), screen with the float backend,
//! confirm every survivor with the exact backend, deduplicate gates up to
//! global phase, then classify each surviving gate exactly. The default
//! policy screens in floats because leakage-free words are rare; the
//! `ExactOnly` policy skips the screen and pays full exact arithmetic per
//! word, useful as a cross-check at small lengths.
//!
//! Work is split over shard groups of length-2 prefixes. Groups run in
//! parallel (rayon, behind the `parallel` feature) and each finished group
//! is checkpointed next to the output path, so a killed run resumes at group
//! granularity. Records and the summary are deterministic: records sort by
//! (length, word) and ties between phase-equal words keep the smallest word.

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::braid::{successors, BraidWord, ReducedWords};
use crate::gate::{classify_exact, GateReport, Tolerances};
use crate::matrix::{ExactMatrix, FloatMatrix};
use crate::rep::{B6Rep, IntMat5};

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("search i/o: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchPolicy {
    /// Float screen at the leakage tolerance, exact confirmation of
    /// survivors (default).
    FloatFilterThenExact,
    /// Exact arithmetic on every visited word.
    ExactOnly,
}

impl SearchPolicy {
    fn name(&self) -> &'static str {
        match self {
            Self::FloatFilterThenExact => "float-filter-then-exact",
            Self::ExactOnly => "exact-only",
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub max_length: usize,
    pub policy: SearchPolicy,
    /// Number of work groups the length-2 prefix shards are folded into;
    /// each group is a unit of parallelism and checkpointing.
    pub shards: usize,
    pub normalize_commuting: bool,
    /// JSONL output path; `None` keeps results in memory only (no
    /// checkpointing either).
    pub out: Option<PathBuf>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            max_length: 1,
            policy: SearchPolicy::FloatFilterThenExact,
            shards: 16,
            normalize_commuting: false,
            out: None,
        }
    }
}

/// One deduplicated leakage-free gate: the smallest word realizing it, the
/// exact classification, and the phase-invariant hash it was deduplicated
/// under.
#[derive(Clone, Debug)]
pub struct SearchRecord {
    pub word: BraidWord,
    pub len: usize,
    pub report: GateReport,
    pub dedup_key: u128,
}

impl SearchRecord {
    /// The external JSONL projection. Word text is digits, spaces, and
    /// minus signs, so no JSON string escaping is needed.
    pub fn jsonl(&self) -> String {
        format!(
            "{{\"word\":\"{}\",\"len\":{},\"leakage_free\":{},\"entangling\":{}}}",
            self.word,
            self.len,
            self.report.leakage_free,
            self.report.entangling.unwrap_or(false),
        )
    }
}

/// Cumulative-by-length counters: entry `l-1` counts words of length <= l
/// (resp. gates whose shortest representative has length <= l).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchSummary {
    pub max_length: usize,
    pub visited: Vec<u64>,
    pub filter_survivors: Vec<u64>,
    pub leakage_free: Vec<u64>,
    pub unique_gates: Vec<u64>,
    pub entangling: u64,
}

/// Per-shard raw tallies (per exact length, not cumulative) plus the
/// dedup map of this shard's hits.
struct ShardOutput {
    visited: Vec<u64>,
    survivors: Vec<u64>,
    leakage_free: Vec<u64>,
    hits: HashMap<u128, BraidWord>,
}

impl ShardOutput {
    fn new(max_length: usize) -> Self {
        Self {
            visited: vec![0; max_length],
            survivors: vec![0; max_length],
            leakage_free: vec![0; max_length],
            hits: HashMap::new(),
        }
    }

    fn absorb(&mut self, other: ShardOutput) {
        for (a, b) in self.visited.iter_mut().zip(&other.visited) {
            *a += b;
        }
        for (a, b) in self.survivors.iter_mut().zip(&other.survivors) {
            *a += b;
        }
        for (a, b) in self.leakage_free.iter_mut().zip(&other.leakage_free) {
            *a += b;
        }
        for (key, word) in other.hits {
            merge_hit(&mut self.hits, key, word);
        }
    }
}

fn merge_hit(hits: &mut HashMap<u128, BraidWord>, key: u128, word: BraidWord) {
    match hits.entry(key) {
        std::collections::hash_map::Entry::Occupied(mut e) => {
            if word < *e.get() {
                e.insert(word);
            }
        }
        std::collections::hash_map::Entry::Vacant(v) => {
            v.insert(word);
        }
    }
}

/// Incremental evaluation stacks for one depth-first scan. Level `d` holds
/// the product of the first `d` letters; the exact stack is extended lazily
/// and only down to the watermark `int_valid`.
struct EvalStacks<'a> {
    rep: &'a B6Rep,
    path: Vec<i32>,
    floats: Vec<FloatMatrix>,
    ints: Vec<IntMat5>,
    int_valid: usize,
}

impl<'a> EvalStacks<'a> {
    fn new(rep: &'a B6Rep) -> Self {
        Self {
            rep,
            path: Vec::new(),
            floats: vec![FloatMatrix::identity(5)],
            ints: vec![IntMat5::identity()],
            int_valid: 1,
        }
    }

    /// Re-aim the stacks at `letters`, reusing the shared prefix.
    fn set_path(&mut self, letters: &[i32], want_floats: bool) {
        let common = self
            .path
            .iter()
            .zip(letters)
            .take_while(|(a, b)| a == b)
            .count();
        self.path.truncate(common);
        self.floats.truncate(common + 1);
        self.int_valid = self.int_valid.min(common + 1);
        for &l in &letters[common..] {
            self.path.push(l);
            if want_floats {
                let top = self.floats.last().expect("identity seed");
                self.floats.push(top.mul(self.rep.generator_float(l)));
            }
        }
    }

    fn float_top(&self) -> &FloatMatrix {
        &self.floats[self.path.len()]
    }

    /// Exact product for the full current path; `None` when the i128
    /// coordinates overflow (callers fall back to the big-rational path).
    fn int_top(&mut self) -> Option<&IntMat5> {
        let depth = self.path.len();
        self.ints.truncate(self.int_valid);
        while self.int_valid <= depth {
            let l = self.path[self.int_valid - 1];
            let gen = self.rep.generator_int(l)?;
            let next = self.ints[self.int_valid - 1].mul(gen)?;
            self.ints.push(next);
            self.int_valid += 1;
        }
        Some(&self.ints[depth])
    }
}

/// Phase-invariant dedup key: SHA-256 over the canonical strings of the 25
/// products `M_ij * conj(M_pq)`, with `(p,q)` the first nonzero entry in
/// row-major order. Phase-equal matrices agree on every product; the 25
/// products determine the matrix up to phase (given `M_pq != 0`), so
/// distinct gates only collide by hash collision.
fn dedup_key_exact(m: &ExactMatrix) -> u128 {
    let (p, q) = first_nonzero(|i, j| m[(i, j)].is_zero());
    let anchor = m[(p, q)].conj();
    let mut hasher = Sha256::new();
    let mut buf = String::new();
    for i in 0..5 {
        for j in 0..5 {
            buf.clear();
            buf.push_str(&format!("{:?}", m[(i, j)].mul(&anchor)));
            buf.push(';');
            hasher.update(buf.as_bytes());
        }
    }
    digest_to_u128(hasher)
}

fn dedup_key_int(m: &IntMat5) -> Option<u128> {
    let (p, q) = first_nonzero(|i, j| m.entry(i, j).is_zero());
    let anchor = m.entry(p, q).conj()?;
    let mut hasher = Sha256::new();
    let mut buf = String::new();
    for i in 0..5 {
        for j in 0..5 {
            buf.clear();
            m.entry(i, j).mul(&anchor)?.write_canonical(&mut buf);
            buf.push(';');
            hasher.update(buf.as_bytes());
        }
    }
    Some(digest_to_u128(hasher))
}

fn first_nonzero(is_zero: impl Fn(usize, usize) -> bool) -> (usize, usize) {
    for i in 0..5 {
        for j in 0..5 {
            if !is_zero(i, j) {
                return (i, j);
            }
        }
    }
    unreachable!("unitary matrices have nonzero entries")
}

fn digest_to_u128(hasher: Sha256) -> u128 {
    let digest = hasher.finalize();
    u128::from_le_bytes(digest[..16].try_into().expect("32-byte digest"))
}

/// Scan all reduced words with the given prefix (or, for an empty prefix,
/// all length-1 words only) and tally into `out`.
fn scan(
    rep: &B6Rep,
    cfg: &SearchConfig,
    prefix: Option<&BraidWord>,
    tol: &Tolerances,
    out: &mut ShardOutput,
) {
    let mut stacks = EvalStacks::new(rep);
    let want_floats = cfg.policy == SearchPolicy::FloatFilterThenExact;
    let max_len = match prefix {
        Some(_) => cfg.max_length,
        None => 1,
    };
    let mut words = ReducedWords::new(6, max_len).normalize_commuting(cfg.normalize_commuting);
    if let Some(p) = prefix {
        words = words.with_prefix(p).expect("prefix fits");
    }
    for word in words {
        let len = word.len();
        out.visited[len - 1] += 1;
        stacks.set_path(word.letters(), want_floats);
        if want_floats {
            let m00 = stacks.float_top()[(0, 0)];
            if m00.norm() < 1.0 - tol.leakage {
                continue;
            }
            out.survivors[len - 1] += 1;
        }
        // Exact confirmation (and key) via i128 coordinates, falling back to
        // big rationals on overflow anywhere along the way.
        let key: Option<u128> = match stacks.int_top() {
            Some(m) => match m.entry(0, 0).abs_sq() {
                Some(a) if a.is_one() => {
                    Some(dedup_key_int(m).unwrap_or_else(|| big_key(rep, &word)))
                }
                Some(_) => None,
                None => confirm_big(rep, &word).then(|| big_key(rep, &word)),
            },
            None => confirm_big(rep, &word).then(|| big_key(rep, &word)),
        };
        if let Some(key) = key {
            out.leakage_free[len - 1] += 1;
            merge_hit(&mut out.hits, key, word);
        }
    }
}

fn confirm_big(rep: &B6Rep, word: &BraidWord) -> bool {
    let m = rep.evaluate_exact(word).expect("six-strand word");
    crate::gate::is_leakage_free_exact(&m)
}

fn big_key(rep: &B6Rep, word: &BraidWord) -> u128 {
    dedup_key_exact(&rep.evaluate_exact(word).expect("six-strand word"))
}

/// The length-2 prefixes that shard the word tree, in enumeration order.
fn shard_prefixes(normalize: bool) -> Vec<BraidWord> {
    let mut prefixes = Vec::new();
    for first in successors(6, None, normalize) {
        for second in successors(6, Some(first), normalize) {
            prefixes.push(
                BraidWord::from_letters(6, [first, second]).expect("reduced pair"),
            );
        }
    }
    prefixes
}

#[derive(Serialize, Deserialize, PartialEq, Eq, Debug, Clone)]
struct PartMeta {
    max_length: usize,
    policy: String,
    normalize_commuting: bool,
    group: usize,
    groups_total: usize,
}

#[derive(Serialize, Deserialize)]
struct PartFile {
    meta: PartMeta,
    visited: Vec<u64>,
    survivors: Vec<u64>,
    leakage_free: Vec<u64>,
    hits: Vec<(String, String)>, // (hex key, word)
}

impl PartFile {
    fn from_output(meta: PartMeta, out: &ShardOutput) -> Self {
        let mut hits: Vec<(String, String)> = out
            .hits
            .iter()
            .map(|(k, w)| (format!("{k:032x}"), w.to_string()))
            .collect();
        hits.sort();
        Self {
            meta,
            visited: out.visited.clone(),
            survivors: out.survivors.clone(),
            leakage_free: out.leakage_free.clone(),
            hits,
        }
    }

    fn into_output(self, max_length: usize) -> Option<ShardOutput> {
        let mut out = ShardOutput::new(max_length);
        if self.visited.len() != max_length {
            return None;
        }
        out.visited = self.visited;
        out.survivors = self.survivors;
        out.leakage_free = self.leakage_free;
        for (key, word) in self.hits {
            let key = u128::from_str_radix(&key, 16).ok()?;
            let word = BraidWord::parse(6, &word).ok()?;
            merge_hit(&mut out.hits, key, word);
        }
        Some(out)
    }
}

fn parts_dir(out: &Path) -> PathBuf {
    let mut name = out.file_name().unwrap_or_default().to_os_string();
    name.push(".parts");
    out.with_file_name(name)
}

fn atomic_write(path: &Path, bytes: &[u8]) -> Result<(), SearchError> {
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, bytes)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

/// One work group: the designated slice of prefixes, plus (for group 0) the
/// length-1 words.
fn run_group(
    rep: &B6Rep,
    cfg: &SearchConfig,
    prefixes: &[BraidWord],
    group: usize,
    groups_total: usize,
) -> ShardOutput {
    let tol = Tolerances::default();
    let mut out = ShardOutput::new(cfg.max_length);
    if group == 0 {
        scan(rep, cfg, None, &tol, &mut out);
    }
    if cfg.max_length >= 2 {
        for (i, prefix) in prefixes.iter().enumerate() {
            if i % groups_total == group {
                scan(rep, cfg, Some(prefix), &tol, &mut out);
            }
        }
    }
    out
}

fn group_result(
    rep: &B6Rep,
    cfg: &SearchConfig,
    prefixes: &[BraidWord],
    group: usize,
    groups_total: usize,
    parts: Option<&Path>,
) -> Result<ShardOutput, SearchError> {
    let meta = PartMeta {
        max_length: cfg.max_length,
        policy: cfg.policy.name().to_string(),
        normalize_commuting: cfg.normalize_commuting,
        group,
        groups_total,
    };
    let part_path = parts.map(|dir| dir.join(format!("part_{group:04}.json")));
    if let Some(path) = &part_path {
        if let Ok(bytes) = fs::read(path) {
            if let Ok(part) = serde_json::from_slice::<PartFile>(&bytes) {
                if part.meta == meta {
                    if let Some(out) = part.into_output(cfg.max_length) {
                        return Ok(out);
                    }
                }
            }
        }
    }
    let out = run_group(rep, cfg, prefixes, group, groups_total);
    if let Some(path) = &part_path {
        let part = PartFile::from_output(meta, &out);
        atomic_write(path, serde_json::to_string(&part)?.as_bytes())?;
    }
    Ok(out)
}

impl From<serde_json::Error> for SearchError {
    fn from(e: serde_json::Error) -> Self {
        Self::Io(e.into())
    }
}

/// Run the full search: enumerate, screen, confirm, deduplicate, classify.
/// Returns the deduplicated records sorted by (length, word) and the
/// summary; when `cfg.out` is set, also writes the JSONL stream (records
/// plus one trailing summary line) atomically, checkpointing per group in
/// `<out>.parts/` along the way.
pub fn run_search(cfg: &SearchConfig) -> Result<(Vec<SearchRecord>, SearchSummary), SearchError> {
    assert!(cfg.max_length >= 1, "max_length must be at least 1");
    let rep = B6Rep::standard();
    let prefixes = shard_prefixes(cfg.normalize_commuting);
    let groups_total = cfg.shards.clamp(1, prefixes.len());
    let parts = match &cfg.out {
        Some(out) => {
            let dir = parts_dir(out);
            fs::create_dir_all(&dir)?;
            Some(dir)
        }
        None => None,
    };

    let groups: Vec<usize> = (0..groups_total).collect();
    let worker = |&group: &usize| {
        group_result(&rep, cfg, &prefixes, group, groups_total, parts.as_deref())
    };
    #[cfg(feature = "parallel")]
    let results: Result<Vec<ShardOutput>, SearchError> = {
        use rayon::prelude::*;
        groups.par_iter().map(worker).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let results: Result<Vec<ShardOutput>, SearchError> =
        groups.iter().map(worker).collect();

    let mut merged = ShardOutput::new(cfg.max_length);
    for out in results? {
        merged.absorb(out);
    }

    // Classify each unique gate exactly and order the records.
    let mut records: Vec<SearchRecord> = merged
        .hits
        .iter()
        .map(|(&key, word)| {
            let m = rep.evaluate_exact(word).expect("six-strand word");
            let report = classify_exact(&m);
            debug_assert!(report.leakage_free, "emitted record must be exact-confirmed");
            SearchRecord { word: word.clone(), len: word.len(), report, dedup_key: key }
        })
        .collect();
    records.sort_by(|a, b| a.word.cmp(&b.word));

    let cumulative = |per_len: &[u64]| -> Vec<u64> {
        per_len
            .iter()
            .scan(0u64, |acc, x| {
                *acc += x;
                Some(*acc)
            })
            .collect()
    };
    let mut unique_per_len = vec![0u64; cfg.max_length];
    for r in &records {
        unique_per_len[r.len - 1] += 1;
    }
    let summary = SearchSummary {
        max_length: cfg.max_length,
        visited: cumulative(&merged.visited),
        filter_survivors: cumulative(&merged.survivors),
        leakage_free: cumulative(&merged.leakage_free),
        unique_gates: cumulative(&unique_per_len),
        entangling: records
            .iter()
            .filter(|r| r.report.entangling == Some(true))
            .count() as u64,
    };

    if let Some(out) = &cfg.out {
        let mut body = String::new();
        for r in &records {
            body.push_str(&r.jsonl());
            body.push('\n');
        }
        body.push_str(&serde_json::json!({ "summary": summary }).to_string());
        body.push('\n');
        atomic_write(out, body.as_bytes())?;
        if let Some(dir) = parts {
            fs::remove_dir_all(dir)?;
        }
    }
    Ok((records, summary))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::NamedBraid;
    use crate::field::FieldElement;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn cfg(max_length: usize) -> SearchConfig {
        SearchConfig { max_length, ..SearchConfig::default() }
    }

    #[test]
    fn length_one_counts_and_records() {
        let (records, summary) = run_search(&cfg(1)).unwrap();
        assert_eq!(summary.visited, vec![10]);
        assert_eq!(summary.leakage_free, vec![8]);
        assert_eq!(summary.unique_gates, vec![8]);
        assert_eq!(summary.entangling, 0);
        let words: Vec<String> = records.iter().map(|r| r.word.to_string()).collect();
        assert_eq!(words, ["1", "-1", "2", "-2", "4", "-4", "5", "-5"]);
        for r in &records {
            assert!(r.report.leakage_free);
            assert_eq!(r.report.entangling, Some(false));
        }
    }

    #[test]
    fn frozen_counts_up_to_length_four() {
        let (_, summary) = run_search(&cfg(4)).unwrap();
        assert_eq!(summary.visited, vec![10, 100, 910, 8200]);
        assert_eq!(summary.leakage_free, vec![8, 64, 464, 3360]);
        assert_eq!(summary.unique_gates, vec![8, 48, 204, 725]);
        assert_eq!(summary.entangling, 0);
        // The float screen never passes anything the exact test rejects by a
        // wide margin, so survivors match the exact counts at these lengths.
        assert_eq!(summary.filter_survivors, summary.leakage_free);
    }

    #[test]
    fn exact_only_policy_agrees() {
        let mut c = cfg(3);
        c.policy = SearchPolicy::ExactOnly;
        let (records_exact, summary_exact) = run_search(&c).unwrap();
        let (records_float, summary_float) = run_search(&cfg(3)).unwrap();
        assert_eq!(summary_exact.visited, summary_float.visited);
        assert_eq!(summary_exact.leakage_free, summary_float.leakage_free);
        assert_eq!(summary_exact.unique_gates, summary_float.unique_gates);
        let k = |rs: &[SearchRecord]| -> Vec<(u128, String)> {
            rs.iter().map(|r| (r.dedup_key, r.word.to_string())).collect()
        };
        assert_eq!(k(&records_exact), k(&records_float));
        // In exact-only mode the screen column is empty.
        assert_eq!(summary_exact.filter_survivors, vec![0, 0, 0]);
    }

    #[test]
    fn shard_union_is_order_independent() {
        let base = run_search(&cfg(3)).unwrap();
        for shards in [1, 4, 90, 1000] {
            let mut c = cfg(3);
            c.shards = shards;
            let (records, summary) = run_search(&c).unwrap();
            assert_eq!(summary, base.1, "shards = {shards}");
            let words: Vec<&BraidWord> = records.iter().map(|r| &r.word).collect();
            let base_words: Vec<&BraidWord> = base.0.iter().map(|r| &r.word).collect();
            assert_eq!(words, base_words, "shards = {shards}");
        }
    }

    #[test]
    fn dedup_is_sound_and_phase_invariant() {
        // Exhaustive at L <= 3: within every key class all matrices are
        // phase-equal, and representatives of distinct classes are not.
        let rep = B6Rep::standard();
        let mut classes: HashMap<u128, Vec<ExactMatrix>> = HashMap::new();
        for word in ReducedWords::new(6, 3) {
            let m = rep.evaluate_exact(&word).unwrap();
            if !crate::gate::is_leakage_free_exact(&m) {
                continue;
            }
            classes.entry(dedup_key_exact(&m)).or_default().push(m);
        }
        assert_eq!(classes.len(), 204);
        let phase_equal = |a: &ExactMatrix, b: &ExactMatrix| -> bool {
            match a.phase_ratio(b) {
                Some(c) => c.abs_sq().is_one() && *a == b.scale(&c),
                None => false,
            }
        };
        for members in classes.values() {
            for m in &members[1..] {
                assert!(phase_equal(&members[0], m), "false merge");
            }
        }
        // Across classes: spot-check every consecutive pair of
        // representatives in key order.
        let mut reps: Vec<(&u128, &ExactMatrix)> =
            classes.iter().map(|(k, v)| (k, &v[0])).collect();
        reps.sort_by_key(|(k, _)| **k);
        for pair in reps.windows(2) {
            assert!(!phase_equal(pair[0].1, pair[1].1), "false split");
        }
        // sigma_1 sigma_4 and sigma_4 sigma_1 commute: same key.
        let w14 = rep.evaluate_exact(&BraidWord::parse(6, "1 4").unwrap()).unwrap();
        let w41 = rep.evaluate_exact(&BraidWord::parse(6, "4 1").unwrap()).unwrap();
        assert_eq!(dedup_key_exact(&w14), dedup_key_exact(&w41));
        // Scaling by a unit phase of the field leaves the key unchanged.
        for k in 0..10 {
            let scaled = w14.scale(&FieldElement::zeta_pow(k));
            assert_eq!(dedup_key_exact(&scaled), dedup_key_exact(&w14));
        }
    }

    #[test]
    fn int_and_big_key_paths_agree() {
        let rep = B6Rep::standard();
        let mut stacks = EvalStacks::new(&rep);
        for word in ReducedWords::new(6, 2) {
            stacks.set_path(word.letters(), false);
            let int_key = stacks.int_top().and_then(dedup_key_int).unwrap();
            let big = rep.evaluate_exact(&word).unwrap();
            assert_eq!(int_key, dedup_key_exact(&big), "{word}");
        }
    }

    #[test]
    fn no_false_negatives_on_known_leakage_free_words() {
        // Random products over sigma_{1,2,4,5}^{+1} up to length 7, plus
        // Sigma: all survive the float screen and the exact test.
        let rep = B6Rep::standard();
        let tol = Tolerances::default();
        let mut rng = StdRng::seed_from_u64(0x5eed);
        let mut check = |word: &BraidWord| {
            let f = rep.evaluate_float(word).unwrap();
            assert!(
                f[(0, 0)].norm() >= 1.0 - tol.leakage,
                "float screen rejected {word}"
            );
            let m = rep.evaluate_exact(word).unwrap();
            assert!(crate::gate::is_leakage_free_exact(&m), "exact test rejected {word}");
        };
        for _ in 0..2000 {
            let len = rng.gen_range(1..=7);
            let letters: Vec<i32> =
                (0..len).map(|_| [1, 2, 4, 5][rng.gen_range(0..4)]).collect();
            check(&BraidWord::from_letters(6, letters).unwrap());
        }
        check(&NamedBraid::Sigma.word());
    }

    #[test]
    fn normalized_enumeration_reaches_the_same_gates() {
        let plain = run_search(&cfg(3)).unwrap();
        let mut c = cfg(3);
        c.normalize_commuting = true;
        let (records, summary) = run_search(&c).unwrap();
        // Fewer words visited, identical gate set.
        assert!(summary.visited[2] < plain.1.visited[2]);
        let keys = |rs: &[SearchRecord]| -> Vec<u128> {
            rs.iter().map(|r| r.dedup_key).collect()
        };
        assert_eq!(keys(&records), keys(&plain.0));
        assert_eq!(summary.unique_gates, plain.1.unique_gates);
    }

    #[test]
    fn jsonl_output_and_checkpoint_resume() {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("results.jsonl");
        let mut c = cfg(2);
        c.out = Some(out.clone());
        c.shards = 4;
        let (records, summary) = run_search(&c).unwrap();
        let body = fs::read_to_string(&out).unwrap();
        let lines: Vec<&str> = body.lines().collect();
        assert_eq!(lines.len(), records.len() + 1);
        let first: serde_json::Value = serde_json::from_str(lines[0]).unwrap();
        assert_eq!(first["word"], "1");
        assert_eq!(first["len"], 1);
        assert_eq!(first["leakage_free"], true);
        assert_eq!(first["entangling"], false);
        let last: serde_json::Value = serde_json::from_str(lines[lines.len() - 1]).unwrap();
        assert_eq!(
            serde_json::from_value::<SearchSummary>(last["summary"].clone()).unwrap(),
            summary
        );
        // Checkpoints are cleaned up after a successful run.
        assert!(!parts_dir(&out).exists());

        // Resume honors existing parts: poison group 3 with an empty result
        // and the rerun must reflect it (proving the part was not recomputed).
        let parts = parts_dir(&out);
        fs::create_dir_all(&parts).unwrap();
        let meta = PartMeta {
            max_length: 2,
            policy: SearchPolicy::FloatFilterThenExact.name().to_string(),
            normalize_commuting: false,
            group: 3,
            groups_total: 4,
        };
        let empty = PartFile {
            meta,
            visited: vec![0, 0],
            survivors: vec![0, 0],
            leakage_free: vec![0, 0],
            hits: vec![],
        };
        fs::write(
            parts.join("part_0003.json"),
            serde_json::to_string(&empty).unwrap(),
        )
        .unwrap();
        let (_, poisoned) = run_search(&c).unwrap();
        assert!(poisoned.visited[1] < summary.visited[1]);

        // A fresh run (no parts) restores the true counts.
        let (_, clean) = run_search(&c).unwrap();
        assert_eq!(clean, summary);
    }
}
