//! Repeated excision of long periodic fragments and the bookkeeping on
//! where the excised pieces sat in the original word.
//!
//! Step `k` finds the leftmost, shortest-root occurrence of `x^{4n}` in the
//! current word `W_{k-1}`, widens it by as many whole copies of `x` as fit
//! on either side, and removes it: `W_{k-1} = u_k f_k y_k`, `W_k = u_k y_k`.
//! The `n` letters ending `u_k` become "boring" of types `1..=n` counted
//! from the cut; a letter marked twice keeps the smaller type.

use alloc::vec;
use alloc::vec::Vec;

use super::essential_fragments;
use crate::error::{invalid, CoreError, CoreResult};
use crate::periodicity::find_power_in;
use crate::word::Word;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PositionType {
    Plain,
    /// Within `n` letters before an excision cut; type 1 is adjacent.
    Boring(usize),
    Excised,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExcisionStep {
    pub u: Word,
    pub f: Word,
    pub y: Word,
    pub root: Word,
    pub r1: usize,
    pub r2: usize,
    /// Original positions of the letters of `f`, increasing.
    pub f_original: Vec<usize>,
}

impl ExcisionStep {
    pub fn exponent(&self) -> usize {
        self.f.len() / self.root.len()
    }

    /// `W_{k-1} = u f y`.
    pub fn before(&self) -> Vec<u8> {
        let mut out = self.u.letters().to_vec();
        out.extend_from_slice(self.f.letters());
        out.extend_from_slice(self.y.letters());
        out
    }

    /// `W_k = u y`.
    pub fn after(&self) -> Vec<u8> {
        let mut out = self.u.letters().to_vec();
        out.extend_from_slice(self.y.letters());
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExcisionTrace {
    pub n: usize,
    pub original: Word,
    pub steps: Vec<ExcisionStep>,
    /// Types of original positions after the last step.
    pub types: Vec<PositionType>,
    /// Whether the run ended because no `4n`-th power was left.
    pub exhausted: bool,
}

struct Replay {
    letters: Vec<u8>,
    alive: Vec<usize>,
    types: Vec<PositionType>,
}

impl Replay {
    fn new(w: &Word) -> Self {
        Replay {
            letters: w.letters().to_vec(),
            alive: (0..w.len()).collect(),
            types: vec![PositionType::Plain; w.len()],
        }
    }

    /// Removes `[fs, fe)` of the current word and updates types.
    fn cut(&mut self, fs: usize, fe: usize, n: usize) -> Vec<usize> {
        let removed: Vec<usize> = self.alive[fs..fe].to_vec();
        for &p in &removed {
            self.types[p] = PositionType::Excised;
        }
        for k in 1..=n.min(fs) {
            let p = self.alive[fs - k];
            self.types[p] = match self.types[p] {
                PositionType::Boring(t) => PositionType::Boring(t.min(k)),
                _ => PositionType::Boring(k),
            };
        }
        self.letters.drain(fs..fe);
        self.alive.drain(fs..fe);
        removed
    }
}

pub fn excise(w: &Word, n: usize, max_steps: usize) -> CoreResult<ExcisionTrace> {
    if n < 2 {
        return Err(invalid(alloc::format!("excision needs n >= 2, got {n}")));
    }
    let mut state = Replay::new(w);
    let mut steps = Vec::new();
    let mut exhausted = false;
    while steps.len() < max_steps {
        let Some((start, r)) = find_power_in(&state.letters, 4 * n) else {
            exhausted = true;
            break;
        };
        let cur = &state.letters;
        let root = &cur[start..start + r];
        let mut r1 = 0;
        while start >= (r1 + 1) * r && cur[start - (r1 + 1) * r..start - r1 * r] == *root {
            r1 += 1;
        }
        let base_end = start + 4 * n * r;
        let mut r2 = 0;
        while base_end + (r2 + 1) * r <= cur.len() && cur[base_end + r2 * r..base_end + (r2 + 1) * r] == *root {
            r2 += 1;
        }
        let (fs, fe) = (start - r1 * r, base_end + r2 * r);
        let alpha = w.alphabet();
        let u = Word::new(alpha, cur[..fs].to_vec())?;
        let f = Word::new(alpha, cur[fs..fe].to_vec())?;
        let y = Word::new(alpha, cur[fe..].to_vec())?;
        let root = Word::new(alpha, root.to_vec())?;
        let f_original = state.cut(fs, fe, n);
        steps.push(ExcisionStep { u, f, y, root, r1, r2, f_original });
    }
    if steps.len() == max_steps && !exhausted {
        exhausted = find_power_in(&state.letters, 4 * n).is_none();
    }
    Ok(ExcisionTrace { n, original: w.clone(), steps, types: state.types, exhausted })
}

impl ExcisionTrace {
    /// The current word and original positions of its letters after `k` steps.
    pub fn word_after(&self, k: usize) -> CoreResult<(Vec<u8>, Vec<usize>)> {
        let state = self.replay(k)?;
        Ok((state.letters, state.alive))
    }

    /// Types of original positions after `k` steps.
    pub fn types_after(&self, k: usize) -> CoreResult<Vec<PositionType>> {
        Ok(self.replay(k)?.types)
    }

    /// Over the letters of `W_k`: `true` for positions that are not boring
    /// or are boring of type greater than `threshold`.
    pub fn admissible_mask(&self, k: usize, threshold: usize) -> CoreResult<Vec<bool>> {
        let state = self.replay(k)?;
        Ok(state
            .alive
            .iter()
            .map(|&p| match state.types[p] {
                PositionType::Plain => true,
                PositionType::Boring(t) => t > threshold,
                PositionType::Excised => false,
            })
            .collect())
    }

    fn replay(&self, k: usize) -> CoreResult<Replay> {
        if k > self.steps.len() {
            return Err(invalid(alloc::format!("trace has {} steps, asked for {k}", self.steps.len())));
        }
        let mut state = Replay::new(&self.original);
        for step in &self.steps[..k] {
            let fs = step.u.len();
            state.cut(fs, fs + step.f.len(), self.n);
        }
        Ok(state)
    }

    /// Splicing `u f y` reproduces each `W_{k-1}`, roots are primitive,
    /// `f = x^{4n + r1 + r2}`, and the recorded original positions match.
    pub fn validate(&self) -> CoreResult<()> {
        let mut state = Replay::new(&self.original);
        for (k, step) in self.steps.iter().enumerate() {
            let fail = |what: &str| CoreError::InvariantViolation(alloc::format!("step {}: {what}", k + 1));
            if step.before() != state.letters {
                return Err(fail("u f y does not reproduce the current word"));
            }
            if !crate::periodicity::is_primitive(step.root.letters()) {
                return Err(fail("root is a proper power"));
            }
            let r = step.root.len();
            if step.f.len() != (4 * self.n + step.r1 + step.r2) * r
                || !step.f.letters().chunks(r).all(|c| c == step.root.letters())
            {
                return Err(fail("f is not the stated power of the root"));
            }
            let fs = step.u.len();
            if state.cut(fs, fs + step.f.len(), self.n) != step.f_original {
                return Err(fail("original positions of f disagree"));
            }
            for (&p, &c) in step.f_original.iter().zip(step.f.letters()) {
                if self.original.letters()[p] != c {
                    return Err(fail("f does not sit at its original positions"));
                }
            }
        }
        if state.types != self.types {
            return Err(CoreError::InvariantViolation("final position types disagree".into()));
        }
        Ok(())
    }
}

/// The disjoint periodic factors rebuilt from the pieces with at most two
/// parts: for every other piece in left-to-right order, the maximal run of
/// its root from the first full copy, followed by one root-length word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicPieceAudit {
    /// Number of pieces `s(1) + s(2)`.
    pub pieces: usize,
    /// `(start, end, exponent)` of every factor that could be formed.
    pub factors: Vec<(usize, usize, usize)>,
    /// Pieces whose factor ran off the end of the word or held no full copy.
    pub unformed: usize,
    pub disjoint: bool,
    pub exponents_ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FragmentStatistics {
    pub steps: usize,
    pub t: usize,
    /// The trace ran exactly `4t + 1` steps with `t >= 1`.
    pub regular: bool,
    /// Original ranges of the pieces of each `f_i`.
    pub pieces: Vec<Vec<(usize, usize)>>,
    /// Number of pieces of each `f_i`.
    pub n_i: Vec<usize>,
    /// `histogram[k] = s(k)` over `i ≤ 4t`, or over every step when `t = 0`.
    pub histogram: Vec<usize>,
    /// Maximal runs of excised positions after each step.
    pub monoliths: Vec<usize>,
    pub piece_count_holds: bool,
    /// `Σ k·s(k)`.
    pub weighted_sum: usize,
    pub piece_weight_holds: bool,
    pub periodic_pieces: PeriodicPieceAudit,
    pub essential_count: usize,
    /// Contiguous excised fragments with root shorter than `n`, greedily
    /// kept when more than `n` letters past the previous kept one.
    pub qualifying: usize,
    pub monotone_link: bool,
}

fn runs(positions: &[usize]) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = Vec::new();
    for &p in positions {
        match out.last_mut() {
            Some(last) if last.1 == p => last.1 = p + 1,
            _ => out.push((p, p + 1)),
        }
    }
    out
}

pub fn fragment_statistics(trace: &ExcisionTrace, original: &Word) -> CoreResult<FragmentStatistics> {
    if &trace.original != original {
        return Err(CoreError::Mismatch("trace was recorded on a different word".into()));
    }
    trace.validate()?;
    let n = trace.n;
    let letters = original.letters();
    let steps = trace.steps.len();
    let t = steps.saturating_sub(1) / 4;
    let regular = t >= 1 && steps == 4 * t + 1;

    let pieces: Vec<Vec<(usize, usize)>> = trace.steps.iter().map(|s| runs(&s.f_original)).collect();
    let n_i: Vec<usize> = pieces.iter().map(Vec::len).collect();

    let mut excised = vec![false; letters.len()];
    let mut monoliths = Vec::with_capacity(steps);
    for step in &trace.steps {
        for &p in &step.f_original {
            excised[p] = true;
        }
        monoliths.push(excised.iter().enumerate().filter(|&(i, &e)| e && (i == 0 || !excised[i - 1])).count());
    }

    let considered = if t >= 1 { 4 * t } else { steps };
    let mut histogram = vec![0; n_i[..considered].iter().copied().max().unwrap_or(0) + 1];
    for &k in &n_i[..considered] {
        histogram[k] += 1;
    }
    let s_at = |k: usize| histogram.get(k).copied().unwrap_or(0);
    let s = s_at(1) + s_at(2);
    let weighted_sum: usize = histogram.iter().enumerate().map(|(k, c)| k * c).sum();
    let (piece_count_holds, piece_weight_holds) = if t >= 1 { (s >= 2 * t, weighted_sum <= 10 * t && 10 * t <= 5 * s) } else { (true, true) };

    // f'_i: the whole f_i, or its longer piece when it has two.
    let mut chosen: Vec<((usize, usize), usize)> = (0..considered)
        .filter(|&i| n_i[i] <= 2)
        .map(|i| {
            let p = &pieces[i];
            let piece = if p.len() == 2 && p[1].1 - p[1].0 > p[0].1 - p[0].0 { p[1] } else { p[0] };
            (piece, i)
        })
        .collect();
    chosen.sort();
    let mut factors = Vec::new();
    let mut unformed = 0;
    for &((a, b), i) in chosen.iter().step_by(2) {
        let x = trace.steps[i].root.letters();
        let m = x.len();
        let Some(start) = (a..b).find(|&p| p + m <= letters.len() && letters[p..p + m] == *x) else {
            unformed += 1;
            continue;
        };
        let mut q = 0;
        while start + (q + 1) * m <= letters.len() && letters[start + q * m..start + (q + 1) * m] == *x {
            q += 1;
        }
        let end = start + (q + 1) * m;
        if end > letters.len() {
            unformed += 1;
            continue;
        }
        factors.push((start, end, q));
    }
    let disjoint = factors.windows(2).all(|p| p[0].1 <= p[1].0);
    let exponents_ok = factors.iter().all(|&(_, _, q)| q >= 2 * n);
    let periodic_pieces = PeriodicPieceAudit { pieces: chosen.len(), factors, unformed, disjoint, exponents_ok };

    let essential_count = essential_fragments(original, n)?.count();
    let mut contiguous: Vec<(usize, usize)> = (0..steps)
        .filter(|&i| n_i[i] == 1 && trace.steps[i].root.len() < n)
        .map(|i| pieces[i][0])
        .collect();
    contiguous.sort();
    let mut qualifying = 0;
    let mut last_end: Option<usize> = None;
    for (a, b) in contiguous {
        if last_end.is_none_or(|e| a > e + n) {
            qualifying += 1;
            last_end = Some(b);
        }
    }

    Ok(FragmentStatistics {
        steps,
        t,
        regular,
        pieces,
        n_i,
        histogram,
        monoliths,
        piece_count_holds,
        weighted_sum,
        piece_weight_holds,
        periodic_pieces,
        essential_count,
        qualifying,
        monotone_link: essential_count >= qualifying,
    })
}
