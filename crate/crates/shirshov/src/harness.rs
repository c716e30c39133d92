//! Seeded batches of randomized and exhaustive audits over the core
//! deciders and inequality checks.
//!
//! Every audit draws its instances from a ChaCha8 stream keyed by the seed
//! and the audit, so a run is reproducible audit by audit. Instances whose
//! hypothesis does not hold are counted but not "applicable"; random
//! sampling continues until the requested number of applicable instances
//! is reached or the attempt budget runs out.

use std::fs;
use std::path::{Path, PathBuf};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use shirshov_core::dilworth::{
    build_tail_poset, chain_decompose, lemma_4_6_audit, lemma_4_7_audit, main_lemma_audit, process_check_positions,
    CyclePoset, PlanarPoset,
};
use shirshov_core::divisibility::{
    is_n_divisible, is_tail_n_divisible, lemma_2_5_audit, lemma_2_6_audit, max_disjoint_repeats,
};
use shirshov_core::height::{cycle_representatives, essential_fragments, excise, fragment_statistics};
use shirshov_core::periodicity::{distinct_factors, find_power, is_primitive, lemma_2_3_conclusion, WordCycle};
use shirshov_core::{compare_letters, Alphabet, LexOutcome, Word};

use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Audit {
    /// n-divisibility decider against block-chain enumeration.
    DivisionOracle,
    /// Chain count against brute-force maximum antichains.
    DilworthWidth,
    /// Few distinct length-k factors force a t-th power.
    WindowPower,
    /// n disjoint equal factors of length n·d force n-reducibility.
    DisjointRepeats,
    /// Tail-sense 4nd-divisibility forces n-reducibility.
    TailDivision,
    /// Length bound for marker sequences.
    MarkerProcess,
    /// ψ(a) against ψ(k·a) on irreducible words.
    SelectorRuns,
    /// φ(m) on cycles of length m below n.
    CycleRunsShort,
    /// φ(a) against φ(k·a) on cycle posets.
    CycleRunsScaling,
    /// Pieces with one or two parts are at least 2t.
    PieceCount,
    /// Weighted piece count at most 10t.
    PieceWeight,
    /// Disjoint periodic factors rebuilt from excised pieces.
    PeriodicPieces,
    /// Excision traces splice back to the original word.
    ExcisionRoundTrip,
    /// Essential fragments dominate qualifying excised fragments.
    FragmentLink,
}

impl Audit {
    pub const ALL: [Audit; 14] = [
        Audit::DivisionOracle,
        Audit::DilworthWidth,
        Audit::WindowPower,
        Audit::DisjointRepeats,
        Audit::TailDivision,
        Audit::MarkerProcess,
        Audit::SelectorRuns,
        Audit::CycleRunsShort,
        Audit::CycleRunsScaling,
        Audit::PieceCount,
        Audit::PieceWeight,
        Audit::PeriodicPieces,
        Audit::ExcisionRoundTrip,
        Audit::FragmentLink,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Audit::DivisionOracle => "division-oracle",
            Audit::DilworthWidth => "dilworth-width",
            Audit::WindowPower => "window-power",
            Audit::DisjointRepeats => "disjoint-repeats",
            Audit::TailDivision => "tail-division",
            Audit::MarkerProcess => "marker-process",
            Audit::SelectorRuns => "selector-runs",
            Audit::CycleRunsShort => "cycle-runs-short",
            Audit::CycleRunsScaling => "cycle-runs-scaling",
            Audit::PieceCount => "piece-count",
            Audit::PieceWeight => "piece-weight",
            Audit::PeriodicPieces => "periodic-pieces",
            Audit::ExcisionRoundTrip => "excision-round-trip",
            Audit::FragmentLink => "fragment-link",
        }
    }

    fn stream(self) -> u64 {
        Audit::ALL.iter().position(|&a| a == self).unwrap() as u64 + 1
    }
}

/// Deliberate defects used to check that the harness notices failures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Mutation {
    /// The division oracle ranks a word above its proper prefixes.
    FaultyComparator,
}

#[derive(Debug, Clone)]
pub struct HarnessConfig {
    pub seed: u64,
    /// Applicable random instances wanted per audit.
    pub instances: usize,
    pub audits: Vec<Audit>,
    pub exhaustive: bool,
    pub mutation: Option<Mutation>,
    /// Directory receiving one JSON file per failing audit.
    pub persist: Option<PathBuf>,
}

impl Default for HarnessConfig {
    fn default() -> Self {
        HarnessConfig {
            seed: 0,
            instances: 1000,
            audits: Audit::ALL.to_vec(),
            exhaustive: true,
            mutation: None,
            persist: None,
        }
    }
}

impl HarnessConfig {
    pub fn empty() -> Self {
        HarnessConfig { audits: Vec::new(), ..HarnessConfig::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub audit: Audit,
    pub seed: u64,
    pub input: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditOutcome {
    pub audit: Audit,
    /// Random instances drawn, applicable or not.
    pub random: usize,
    pub random_applicable: usize,
    pub exhaustive: usize,
    pub exhaustive_applicable: usize,
    pub failures: usize,
    pub counterexample: Option<Counterexample>,
    pub persisted: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HarnessReport {
    pub seed: u64,
    pub outcomes: Vec<AuditOutcome>,
}

impl HarnessReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.failures == 0)
    }

    pub fn outcome(&self, audit: Audit) -> Option<&AuditOutcome> {
        self.outcomes.iter().find(|o| o.audit == audit)
    }
}

enum Check {
    Vacuous,
    Held,
    Failed(String),
}

impl From<bool> for Check {
    fn from(ok: bool) -> Self {
        if ok {
            Check::Held
        } else {
            Check::Failed("inequality violated".into())
        }
    }
}

fn check(r: shirshov_core::CoreResult<bool>) -> Check {
    match r {
        Ok(ok) => ok.into(),
        Err(e) => Check::Failed(e.to_string()),
    }
}

struct Tally {
    audit: Audit,
    seed: u64,
    outcome: AuditOutcome,
}

impl Tally {
    fn new(audit: Audit, seed: u64) -> Self {
        Tally {
            audit,
            seed,
            outcome: AuditOutcome {
                audit,
                random: 0,
                random_applicable: 0,
                exhaustive: 0,
                exhaustive_applicable: 0,
                failures: 0,
                counterexample: None,
                persisted: None,
            },
        }
    }

    fn record(&mut self, exhaustive: bool, input: impl FnOnce() -> String, result: Check) {
        let o = &mut self.outcome;
        let applicable = !matches!(result, Check::Vacuous);
        if exhaustive {
            o.exhaustive += 1;
            o.exhaustive_applicable += applicable as usize;
        } else {
            o.random += 1;
            o.random_applicable += applicable as usize;
        }
        if let Check::Failed(detail) = result {
            o.failures += 1;
            if o.counterexample.is_none() {
                o.counterexample = Some(Counterexample { audit: self.audit, seed: self.seed, input: input(), detail });
            }
        }
    }
}

/// Runs the configured audits in order.
pub fn run(config: &HarnessConfig) -> Result<HarnessReport> {
    let mut outcomes = Vec::with_capacity(config.audits.len());
    for &audit in &config.audits {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        rng.set_stream(audit.stream());
        let mut tally = Tally::new(audit, config.seed);
        let budget = config.instances.saturating_mul(50).max(config.instances);
        while tally.outcome.random_applicable < config.instances && tally.outcome.random < budget {
            random_instance(audit, &mut rng, config.mutation, &mut tally);
        }
        if config.exhaustive {
            exhaustive_instances(audit, config.mutation, &mut tally);
        }
        if let (Some(dir), Some(cx)) = (&config.persist, &tally.outcome.counterexample) {
            tally.outcome.persisted = Some(persist(dir, cx)?.display().to_string());
        }
        outcomes.push(tally.outcome);
    }
    Ok(HarnessReport { seed: config.seed, outcomes })
}

fn persist(dir: &Path, cx: &Counterexample) -> Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let path = dir.join(format!("{}-seed{}.json", cx.audit.name(), cx.seed));
    fs::write(&path, serde_json::to_string_pretty(cx)? + "\n")?;
    Ok(path)
}

// ---- instance generators ----

fn word(letters: Vec<u8>, l: usize) -> Word {
    Word::new(Alphabet::new(l).expect("alphabet size in range"), letters).expect("letters in range")
}

fn random_letters(rng: &mut ChaCha8Rng, l: usize, len: usize) -> Vec<u8> {
    (0..len).map(|_| rng.gen_range(1..=l as u8)).collect()
}

fn avoids(letters: &[u8], n: usize, d: usize, l: usize) -> bool {
    let w = word(letters.to_vec(), l);
    matches!(find_power(&w, d), Ok(None)) && matches!(is_n_divisible(&w, n), Ok(None))
}

/// Random letter-by-letter walk through the avoiders, up to `max_len`.
pub fn random_avoider(rng: &mut ChaCha8Rng, n: usize, d: usize, l: usize, max_len: usize) -> Word {
    let mut letters = Vec::new();
    'grow: while letters.len() < max_len {
        let start = rng.gen_range(0..l);
        for off in 0..l {
            letters.push(((start + off) % l) as u8 + 1);
            if avoids(&letters, n, d, l) {
                continue 'grow;
            }
            letters.pop();
        }
        break;
    }
    word(letters, l)
}

/// Blocks of high powers of short random roots with short random
/// separators, over three letters.
pub fn power_rich(rng: &mut ChaCha8Rng, min_exp: usize, max_exp: usize, blocks: usize) -> Word {
    let mut letters = Vec::new();
    for _ in 0..blocks {
        let root_len = rng.gen_range(1..=3);
        let root = random_letters(rng, 3, root_len);
        for _ in 0..rng.gen_range(min_exp..=max_exp) {
            letters.extend_from_slice(&root);
        }
        let sep = rng.gen_range(0..=3);
        letters.extend(random_letters(rng, 3, sep));
    }
    word(letters, 3)
}

fn all_words(len: usize, l: usize) -> impl Iterator<Item = Vec<u8>> {
    (0..l.pow(len as u32)).map(move |code| (0..len).map(|i| (code / l.pow(i as u32) % l) as u8 + 1).collect())
}

// ---- oracles ----

type Comparator = fn(&[u8], &[u8]) -> LexOutcome;

fn faulty_compare(u: &[u8], v: &[u8]) -> LexOutcome {
    match compare_letters(u, v) {
        LexOutcome::IncomparablePrefix if u.len() > v.len() => LexOutcome::Greater,
        other => other,
    }
}

/// Longest chain of contiguous blocks, each strictly greater than the
/// next under `cmp`, found by trying every cut.
pub fn longest_block_chain(w: &[u8], cmp: Comparator) -> usize {
    let len = w.len();
    if len == 0 {
        return 0;
    }
    // best[s][e]: longest chain whose first block is w[s..e].
    let mut best = vec![vec![1usize; len + 1]; len + 1];
    let mut overall = 1;
    for s in (0..len).rev() {
        for e in s + 1..=len {
            let mut b = 1;
            for e2 in e + 1..=len {
                if cmp(&w[s..e], &w[e..e2]) == LexOutcome::Greater {
                    b = b.max(1 + best[e][e2]);
                }
            }
            best[s][e] = b;
            overall = overall.max(b);
        }
    }
    overall
}

/// Largest set of pairwise incomparable elements, by subset enumeration.
pub fn brute_width<P: PlanarPoset + ?Sized>(p: &P) -> usize {
    let n = p.len();
    assert!(n <= 20, "subset enumeration over {n} elements");
    (0u32..1 << n)
        .filter(|mask| {
            let items: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            items.iter().all(|&a| items.iter().all(|&b| !p.less(a, b)))
        })
        .map(|mask| mask.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

// ---- audits ----

fn random_instance(audit: Audit, rng: &mut ChaCha8Rng, mutation: Option<Mutation>, t: &mut Tally) {
    match audit {
        Audit::DivisionOracle => {
            let l = rng.gen_range(1..=3);
            let len = rng.gen_range(0..=12);
            let letters = random_letters(rng, l, len);
            division_oracle(&letters, l, mutation, false, t);
        }
        Audit::DilworthWidth => {
            let n = rng.gen_range(2..=4);
            let d = rng.gen_range(n..=4);
            let l = rng.gen_range(2..=4);
            let w = random_avoider(rng, n, d, l, 12 * d);
            dilworth_width(&w, d, false, t);
        }
        Audit::WindowPower => {
            let k = rng.gen_range(1..=4);
            let tt = rng.gen_range(1..=4);
            let l = rng.gen_range(2..=3);
            let root_len = rng.gen_range(1..=k);
            let root = random_letters(rng, l, root_len);
            let mut letters: Vec<u8> = root.iter().copied().cycle().take(k * tt).collect();
            if rng.gen_bool(0.5) {
                let i = rng.gen_range(0..letters.len());
                letters[i] = rng.gen_range(1..=l as u8);
            }
            window_power(&word(letters, l), k, tt, false, t);
        }
        Audit::DisjointRepeats => {
            let n = rng.gen_range(2..=3);
            let d = rng.gen_range(n..=4);
            let l = rng.gen_range(2..=3);
            let block = random_letters(rng, l, n * d);
            let mut letters = Vec::new();
            for _ in 0..n {
                let gap = rng.gen_range(0..=4);
                letters.extend(random_letters(rng, l, gap));
                letters.extend_from_slice(&block);
            }
            let gap = rng.gen_range(0..=4);
            letters.extend(random_letters(rng, l, gap));
            disjoint_repeats(&word(letters, l), n, d, false, t);
        }
        Audit::TailDivision => {
            let n = 2;
            let d = rng.gen_range(2..=3);
            let l = rng.gen_range(2..=3);
            let hi = rng.gen_range(2..=l as u8);
            let lo = rng.gen_range(1..hi);
            let head = rng.gen_range(0..=8);
            let mut letters = random_letters(rng, l, head);
            let run = rng.gen_range(4 * n * d - 2..=4 * n * d + 4);
            letters.extend(std::iter::repeat_n(hi, run));
            letters.push(lo);
            let tail = rng.gen_range(0..=8);
            letters.extend(random_letters(rng, l, tail));
            tail_division(&word(letters, l), n, d, false, t);
        }
        Audit::MarkerProcess => {
            let k = rng.gen_range(2..=5);
            let p = rng.gen_range(2..=4);
            let cap = rng.gen_range(0..=64);
            let mut seq: Vec<usize> = Vec::new();
            while seq.len() < cap {
                let mut options: Vec<usize> = (1..k).collect();
                options.shuffle(rng);
                let next = options.into_iter().find(|&s| {
                    seq.push(s);
                    let ok = process_check_positions(&seq, k, p).map(|c| c.hypothesis).unwrap_or(false);
                    seq.pop();
                    ok
                });
                match next {
                    Some(s) => seq.push(s),
                    None => break,
                }
            }
            marker_process(&seq, k, p, false, t);
        }
        Audit::SelectorRuns => {
            let n = rng.gen_range(2..=4);
            let d = rng.gen_range(n..=4);
            let l = rng.gen_range(2..=4);
            let len = rng.gen_range(1..=64);
            let w = random_avoider(rng, n, d, l, len);
            let a = rng.gen_range(1..=3);
            let k = rng.gen_range(1..=3);
            selector_runs(&w, n, d, a, k, false, t);
        }
        Audit::CycleRunsShort | Audit::CycleRunsScaling => {
            let n = rng.gen_range(3..=5);
            let blocks = rng.gen_range(1..=10);
            let w = power_rich(rng, n, 3 * n, blocks);
            cycle_runs(audit, &w, n, false, t);
        }
        Audit::PieceCount
        | Audit::PieceWeight
        | Audit::PeriodicPieces
        | Audit::ExcisionRoundTrip
        | Audit::FragmentLink => {
            let blocks = rng.gen_range(1..=14);
            let w = power_rich(rng, 4, 20, blocks);
            excision(audit, &w, 2, false, t);
        }
    }
}

fn exhaustive_instances(audit: Audit, mutation: Option<Mutation>, t: &mut Tally) {
    match audit {
        Audit::DivisionOracle => {
            for len in 0..=8 {
                for letters in all_words(len, 2) {
                    division_oracle(&letters, 2, mutation, true, t);
                }
            }
        }
        Audit::DilworthWidth => {
            for len in 1..=12 {
                for letters in all_words(len, 2) {
                    let w = word(letters, 2);
                    dilworth_width(&w, 3, true, t);
                }
            }
        }
        Audit::WindowPower => {
            for (l, max) in [(2, 12), (3, 8)] {
                for k in 1..=max {
                    for tt in 1..=max / k {
                        for letters in all_words(k * tt, l) {
                            window_power(&word(letters, l), k, tt, true, t);
                        }
                    }
                }
            }
        }
        Audit::DisjointRepeats => {
            for len in 8..=12 {
                for letters in all_words(len, 2) {
                    disjoint_repeats(&word(letters, 2), 2, 2, true, t);
                }
            }
        }
        Audit::TailDivision => {
            for m in 15..=17 {
                for head in (0..=3).flat_map(|len| all_words(len, 2)) {
                    for tail in (0..=3).flat_map(|len| all_words(len, 2)) {
                        let mut letters = head.clone();
                        letters.extend(std::iter::repeat_n(2, m));
                        letters.push(1);
                        letters.extend_from_slice(&tail);
                        tail_division(&word(letters, 2), 2, 2, true, t);
                    }
                }
            }
        }
        Audit::MarkerProcess => {
            for (k, p, max_len) in [(2, 2, 4), (2, 3, 4), (3, 2, 5), (3, 3, 9), (4, 2, 8)] {
                for len in 0..=max_len {
                    for seq in all_words(len, k - 1) {
                        let seq: Vec<usize> = seq.into_iter().map(usize::from).collect();
                        marker_process(&seq, k, p, true, t);
                    }
                }
            }
        }
        Audit::SelectorRuns => {
            for len in 1..=8 {
                for letters in all_words(len, 3) {
                    let w = word(letters, 3);
                    for (a, k) in [(1, 1), (1, 2), (1, 3), (2, 2)] {
                        selector_runs(&w, 3, 3, a, k, true, t);
                    }
                }
            }
        }
        Audit::CycleRunsShort | Audit::CycleRunsScaling => {
            for len in 1..=12 {
                for letters in all_words(len, 2) {
                    cycle_runs(audit, &word(letters, 2), 3, true, t);
                }
            }
        }
        _ => {
            // Five blocks, each a power of a, b or ab with exponent 8 or 9,
            // optionally followed by a separator c.
            let options: Vec<Vec<u8>> = [&[1u8][..], &[2], &[1, 2]]
                .iter()
                .flat_map(|r| [8, 9].map(|e| r.repeat(e)))
                .flat_map(|b| {
                    let mut sep = b.clone();
                    sep.push(3);
                    [b, sep]
                })
                .collect();
            let k = options.len();
            for code in 0..k.pow(5) {
                let letters: Vec<u8> = (0..5).flat_map(|i| options[code / k.pow(i) % k].iter().copied()).collect();
                excision(audit, &word(letters, 3), 2, true, t);
            }
        }
    }
}

fn division_oracle(letters: &[u8], l: usize, mutation: Option<Mutation>, ex: bool, t: &mut Tally) {
    let cmp: Comparator = match mutation {
        Some(Mutation::FaultyComparator) => faulty_compare,
        None => compare_letters,
    };
    let w = word(letters.to_vec(), l);
    let chain = longest_block_chain(letters, cmp);
    let mut result = Check::Held;
    for n in 1..=4 {
        match is_n_divisible(&w, n) {
            Ok(found) if found.is_some() == (chain >= n) => {}
            Ok(found) => {
                result = Check::Failed(format!("n={n}: decider says {}, enumeration says {}", found.is_some(), chain >= n));
                break;
            }
            Err(e) => {
                result = Check::Failed(e.to_string());
                break;
            }
        }
    }
    t.record(ex, || format!("word={} l={l}", w.to_text()), result);
}

fn dilworth_width(w: &Word, d: usize, ex: bool, t: &mut Tally) {
    let poset = match build_tail_poset(w, d) {
        Ok(b) => match b.poset() {
            Some(p) if p.len() <= 12 => p,
            _ => return t.record(ex, String::new, Check::Vacuous),
        },
        Err(e) => return t.record(ex, || w.to_text(), Check::Failed(e.to_string())),
    };
    let result = match chain_decompose(&poset) {
        Ok(dec) => {
            let chains_ok = dec.chains.iter().all(|c| c.windows(2).all(|p| poset.less(p[0], p[1])));
            let width = brute_width(&poset);
            if chains_ok && dec.chain_count == width && dec.antichain.len() == width {
                Check::Held
            } else {
                Check::Failed(format!("{} chains, brute-force width {width}", dec.chain_count))
            }
        }
        Err(e) => Check::Failed(e.to_string()),
    };
    t.record(ex, || format!("word={} l={} d={d}", w.to_text(), w.alphabet().size()), result);
}

fn window_power(w: &Word, k: usize, tt: usize, ex: bool, t: &mut Tally) {
    let result = match distinct_factors(w, k) {
        Ok(c) if c > k => Check::Vacuous,
        Ok(_) => match lemma_2_3_conclusion(w, k, tt) {
            Ok(Some(p)) if p.is_valid_in(w) && p.exponent >= tt => Check::Held,
            Ok(other) => Check::Failed(format!("no valid power of exponent {tt}: {other:?}")),
            Err(e) => Check::Failed(e.to_string()),
        },
        Err(e) => Check::Failed(e.to_string()),
    };
    t.record(ex, || format!("word={} k={k} t={tt}", w.to_text()), result);
}

fn disjoint_repeats(w: &Word, n: usize, d: usize, ex: bool, t: &mut Tally) {
    let result = if max_disjoint_repeats(w.letters(), n * d) < n { Check::Vacuous } else { check(lemma_2_5_audit(w, n, d)) };
    t.record(ex, || format!("word={} n={n} d={d}", w.to_text()), result);
}

fn tail_division(w: &Word, n: usize, d: usize, ex: bool, t: &mut Tally) {
    let result = match is_tail_n_divisible(w, 4 * n * d) {
        Ok(None) => Check::Vacuous,
        Ok(Some(_)) => check(lemma_2_6_audit(w, n, d)),
        Err(e) => Check::Failed(e.to_string()),
    };
    t.record(ex, || format!("word={} n={n} d={d}", w.to_text()), result);
}

fn marker_process(seq: &[usize], k: usize, p: usize, ex: bool, t: &mut Tally) {
    let result = match process_check_positions(seq, k, p) {
        Ok(c) if !c.hypothesis => Check::Vacuous,
        Ok(c) => c.within_bound.into(),
        Err(e) => Check::Failed(e.to_string()),
    };
    t.record(ex, || format!("seq={seq:?} k={k} p={p}"), result);
}

fn selector_runs(w: &Word, n: usize, d: usize, a: usize, k: usize, ex: bool, t: &mut Tally) {
    let result = match main_lemma_audit(w, n, d, a, k, None) {
        Ok(r) if r.skipped => Check::Vacuous,
        Ok(r) if r.holds => Check::Held,
        Ok(r) => Check::Failed(format!("psi(a) = {} > {}", r.psi_a, r.rhs)),
        Err(e) => Check::Failed(e.to_string()),
    };
    t.record(ex, || format!("word={} l={} n={n} d={d} a={a} k={k}", w.to_text(), w.alphabet().size()), result);
}

fn cycle_runs(audit: Audit, w: &Word, n: usize, ex: bool, t: &mut Tally) {
    let frags = match essential_fragments(w, n) {
        Ok(f) => f,
        Err(e) => return t.record(ex, || w.to_text(), Check::Failed(e.to_string())),
    };
    let mut any = false;
    for m in 1..n {
        let cycles: Vec<WordCycle> = cycle_representatives(&frags, m);
        if cycles.is_empty() {
            continue;
        }
        any = true;
        let input = || format!("word={} n={n} m={m}", w.to_text());
        let poset = match CyclePoset::new(cycles) {
            Ok(p) => p,
            Err(e) => return t.record(ex, input, Check::Failed(e.to_string())),
        };
        let dec = match chain_decompose(&poset) {
            Ok(d) => d,
            Err(e) => return t.record(ex, input, Check::Failed(e.to_string())),
        };
        let result = if audit == Audit::CycleRunsShort {
            check(lemma_4_6_audit(&poset, &dec, n).map(|a| a.holds))
        } else {
            let mut all = Ok(true);
            for a in 1..=m {
                for k in 1..=m / a {
                    match lemma_4_7_audit(&poset, &dec, n, n, a, k) {
                        Ok(r) if r.holds => {}
                        Ok(_) => all = Ok(false),
                        Err(e) => all = Err(e),
                    }
                }
            }
            check(all)
        };
        t.record(ex, input, result);
    }
    if !any {
        t.record(ex, String::new, Check::Vacuous);
    }
}

fn excision(audit: Audit, w: &Word, n: usize, ex: bool, t: &mut Tally) {
    let input = || format!("word={} n={n}", w.to_text());
    let trace = match excise(w, n, 256) {
        Ok(tr) => tr,
        Err(e) => return t.record(ex, input, Check::Failed(e.to_string())),
    };
    if audit == Audit::ExcisionRoundTrip {
        let mut previous = w.letters().to_vec();
        let mut ok = trace.validate().is_ok();
        for step in &trace.steps {
            ok &= step.before() == previous && is_primitive(step.root.letters());
            previous = step.after();
        }
        let result = if trace.steps.is_empty() { Check::Vacuous } else { ok.into() };
        return t.record(ex, input, result);
    }
    let stats = match fragment_statistics(&trace, w) {
        Ok(s) => s,
        Err(e) => return t.record(ex, input, Check::Failed(e.to_string())),
    };
    let result = match audit {
        Audit::PieceCount if stats.t >= 1 => stats.piece_count_holds.into(),
        Audit::PieceWeight if stats.t >= 1 => stats.piece_weight_holds.into(),
        Audit::PeriodicPieces if stats.periodic_pieces.pieces > 0 => {
            (stats.periodic_pieces.disjoint && stats.periodic_pieces.exponents_ok).into()
        }
        Audit::FragmentLink if !trace.steps.is_empty() => stats.monotone_link.into(),
        _ => Check::Vacuous,
    };
    t.record(ex, input, result);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_config_passes() {
        let report = run(&HarnessConfig::empty()).unwrap();
        assert!(report.outcomes.is_empty());
        assert!(report.passed());
    }

    #[test]
    fn block_chain_oracle() {
        assert_eq!(longest_block_chain(b"", compare_letters), 0);
        assert_eq!(longest_block_chain(&[3, 2, 1], compare_letters), 3);
        assert_eq!(longest_block_chain(&[1, 1, 1], compare_letters), 1);
        assert_eq!(longest_block_chain(&[1, 1, 1], faulty_compare), 2);
    }

    #[test]
    fn reproducible() {
        let config = HarnessConfig {
            instances: 30,
            audits: vec![Audit::SelectorRuns, Audit::PieceCount],
            exhaustive: false,
            ..HarnessConfig::default()
        };
        assert_eq!(run(&config).unwrap(), run(&config).unwrap());
    }
}
