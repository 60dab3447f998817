//! Multiplicity-sequence arithmetic: Euclidean blocks S(a,b), the nu
//! invariants, genus check, staircase decomposition, proximity matrices and
//! the degree-d obstruction analysis.

use num::integer::gcd;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CuspError {
    #[error("entries must be positive (found {0})")]
    NonPositiveEntry(u64),
    #[error("sequence must be non-increasing at index {0}")]
    Increasing(usize),
    #[error("point {point} would be proximate to {count} earlier points")]
    TooManyProximities { point: usize, count: usize },
    #[error("capacity of point {point} exceeded: multiplicity {multiplicity}, proximate load {load}")]
    CapacityExceeded {
        point: usize,
        multiplicity: u64,
        load: u64,
    },
    #[error("euclid inputs must be positive")]
    NonPositiveEuclidInput,
    #[error("first multiplicity {r1} exceeds degree-1 = {max}")]
    MultiplicityTooLarge { r1: u64, max: u64 },
    #[error("minimal multiplicity sequence entries must be >= 2 (found {0})")]
    NotMinimal(u64),
    #[error("profile is smooth; no embedded sequence")]
    SmoothProfile,
    #[error("sequence does not fit the staircase grammar at position {0}")]
    NotStaircase(usize),
    #[error("extension length {extend_to} is shorter than the sequence ({len})")]
    ExtensionTooShort { extend_to: usize, len: usize },
    #[error("degree {degree} exceeds the enumeration bound {bound}; raise the bound explicitly")]
    BoundExceeded { degree: u64, bound: u64 },
}

/// Non-increasing positive integers, admissible for the greedy proximity
/// assignment once extended by trailing 1's.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MultiplicitySequence(Vec<u64>);

impl MultiplicitySequence {
    pub fn new(entries: Vec<u64>) -> Result<Self, CuspError> {
        for (i, &r) in entries.iter().enumerate() {
            if r == 0 {
                return Err(CuspError::NonPositiveEntry(r));
            }
            if i > 0 && entries[i - 1] < r {
                return Err(CuspError::Increasing(i));
            }
        }
        if !entries.is_empty() {
            // admissibility at the embedded horizon n + r_n
            let horizon = entries.len() + *entries.last().unwrap() as usize;
            proximity_assignment(&extend_with_ones(&entries, horizon))?;
        }
        Ok(MultiplicitySequence(entries))
    }

    pub fn empty() -> Self {
        MultiplicitySequence(Vec::new())
    }

    /// For sequences admissible by construction (Euclid blocks); the
    /// checked path stays the default.
    pub(crate) fn new_unchecked(entries: Vec<u64>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0] >= w[1]));
        MultiplicitySequence(entries)
    }

    pub fn entries(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn sum_of_squares(&self) -> u64 {
        self.0.iter().map(|r| r * r).sum()
    }

    /// Entries padded with trailing 1's to the requested length.
    pub fn extended(&self, to_len: usize) -> Result<Vec<u64>, CuspError> {
        if to_len < self.len() {
            return Err(CuspError::ExtensionTooShort {
                extend_to: to_len,
                len: self.len(),
            });
        }
        Ok(extend_with_ones(&self.0, to_len))
    }
}

fn extend_with_ones(entries: &[u64], to_len: usize) -> Vec<u64> {
    let mut out = entries.to_vec();
    out.resize(to_len, 1);
    out
}

/// The multiplicity block S(a,b) given by the Euclidean algorithm:
/// each quotient q_i contributes q_i copies of x_i. Symmetric in (a,b).
pub fn euclid_sequence(a: u64, b: u64) -> Result<MultiplicitySequence, CuspError> {
    if a == 0 || b == 0 {
        return Err(CuspError::NonPositiveEuclidInput);
    }
    let (mut x0, mut x1) = (a.max(b), a.min(b));
    let mut out = Vec::new();
    while x1 > 0 {
        let q = x0 / x1;
        let r = x0 % x1;
        for _ in 0..q {
            out.push(x1);
        }
        x0 = x1;
        x1 = r;
    }
    // quotient blocks are descending, so the sequence is admissible as-is
    Ok(MultiplicitySequence::new_unchecked(out))
}

#[derive(Debug, Clone, Serialize)]
pub struct EuclidIdentities {
    pub a: u64,
    pub b: u64,
    pub sum: u64,
    pub sum_sq: u64,
    /// true iff sum = a + b - gcd(a,b) and sum_sq = a*b, exactly.
    pub ok: bool,
}

pub fn verify_euclid_identities(a: u64, b: u64) -> Result<EuclidIdentities, CuspError> {
    let s = euclid_sequence(a, b)?;
    let sum = s.sum();
    let sum_sq = s.sum_of_squares();
    let ok = sum == a + b - gcd(a, b) && sum_sq == a * b;
    Ok(EuclidIdentities {
        a,
        b,
        sum,
        sum_sq,
        ok,
    })
}

/// Plane-curve degree plus the minimal multiplicity sequence of its single
/// cusp (empty for a smooth curve).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CuspProfile {
    pub degree: u64,
    pub minseq: MultiplicitySequence,
}

impl CuspProfile {
    pub fn new(degree: u64, multiplicities: Vec<u64>) -> Result<Self, CuspError> {
        if degree == 0 {
            return Err(CuspError::NonPositiveEntry(0));
        }
        for &r in &multiplicities {
            if r < 2 {
                return Err(CuspError::NotMinimal(r));
            }
        }
        let minseq = MultiplicitySequence::new(multiplicities)?;
        if let Some(&r1) = minseq.entries().first() {
            if r1 > degree - 1 {
                return Err(CuspError::MultiplicityTooLarge {
                    r1,
                    max: degree - 1,
                });
            }
        }
        Ok(CuspProfile { degree, minseq })
    }

    pub fn smooth(degree: u64) -> Result<Self, CuspError> {
        CuspProfile::new(degree, Vec::new())
    }

    pub fn is_smooth(&self) -> bool {
        self.minseq.is_empty()
    }

    /// Self-intersection of the strict transform after the minimal
    /// resolution: d^2 - sum r_i^2 (d^2 for a smooth curve).
    pub fn nu_tilde(&self) -> i64 {
        let d2 = (self.degree * self.degree) as i64;
        d2 - self.minseq.sum_of_squares() as i64
    }

    /// Self-intersection after the embedded resolution: nu_tilde - r_n for a
    /// singular curve, d^2 otherwise.
    pub fn nu_emb(&self) -> i64 {
        match self.minseq.entries().last() {
            Some(&rn) => self.nu_tilde() - rn as i64,
            None => self.nu_tilde(),
        }
    }

    /// Exact test of (d-1)(d-2) = sum r_i (r_i - 1).
    pub fn genus_zero_check(&self) -> bool {
        let lhs = (self.degree as i64 - 1) * (self.degree as i64 - 2);
        let rhs: i64 = self
            .minseq
            .entries()
            .iter()
            .map(|&r| (r * (r - 1)) as i64)
            .sum();
        lhs == rhs
    }

    /// Minimal sequence extended with r_n trailing 1's (length N = n + r_n).
    pub fn embedded_sequence(&self) -> Result<MultiplicitySequence, CuspError> {
        let rn = *self
            .minseq
            .entries()
            .last()
            .ok_or(CuspError::SmoothProfile)?;
        let extended = self.minseq.extended(self.minseq.len() + rn as usize)?;
        MultiplicitySequence::new(extended)
    }
}

/// Lower-triangular proximity relation: `targets[j]` lists the earlier
/// points (0-based) that point j is proximate to.
#[derive(Debug, Clone, Serialize)]
pub struct ProximityMatrix {
    pub len: usize,
    pub targets: Vec<Vec<usize>>,
    pub deficits: Vec<u64>,
}

impl ProximityMatrix {
    pub fn is_proximate(&self, j: usize, i: usize) -> bool {
        self.targets[j].contains(&i)
    }

    pub fn proximate_to(&self, i: usize) -> Vec<usize> {
        (0..self.len)
            .filter(|&j| self.targets[j].contains(&i))
            .collect()
    }

    /// Dense 0/1 rows, row j marking the points j is proximate to.
    pub fn rows(&self) -> Vec<Vec<u8>> {
        (0..self.len)
            .map(|j| {
                (0..self.len)
                    .map(|i| u8::from(self.targets[j].contains(&i)))
                    .collect()
            })
            .collect()
    }
}

#[allow(clippy::needless_range_loop)]
fn proximity_assignment(entries: &[u64]) -> Result<ProximityMatrix, CuspError> {
    let m = entries.len();
    // prefix[i] = entries[0] + .. + entries[i-1]
    let mut prefix = vec![0u64; m + 1];
    for i in 0..m {
        prefix[i + 1] = prefix[i] + entries[i];
    }
    let between = |lo: usize, hi: usize| prefix[hi] - prefix[lo]; // sum over [lo, hi)
    let mut targets: Vec<Vec<usize>> = vec![Vec::new(); m];
    let mut loads = vec![0u64; m];
    for j in 1..m {
        targets[j].push(j - 1);
        loads[j - 1] += entries[j];
        let mut satellites = Vec::new();
        for i in 0..j.saturating_sub(1) {
            if between(i + 1, j) < entries[i] {
                satellites.push(i);
            }
        }
        if satellites.len() > 1 {
            return Err(CuspError::TooManyProximities {
                point: j + 1,
                count: satellites.len() + 1,
            });
        }
        for &i in &satellites {
            loads[i] += entries[j];
        }
        targets[j].extend(satellites);
    }
    let mut deficits = Vec::with_capacity(m);
    for i in 0..m {
        if loads[i] > entries[i] {
            return Err(CuspError::CapacityExceeded {
                point: i + 1,
                multiplicity: entries[i],
                load: loads[i],
            });
        }
        deficits.push(entries[i] - loads[i]);
    }
    Ok(ProximityMatrix {
        len: m,
        targets,
        deficits,
    })
}

/// Greedy proximity matrix of the sequence extended with 1's to `extend_to`.
pub fn proximity_matrix(
    seq: &MultiplicitySequence,
    extend_to: usize,
) -> Result<ProximityMatrix, CuspError> {
    let extended = seq.extended(extend_to)?;
    proximity_assignment(&extended)
}

/// Staircase decomposition S(a_1,b_1) ... S(a_h,b_h) (a_{h+1})_e.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockDecomposition {
    pub blocks: Vec<(u64, u64)>,
    /// a_{h+1} = gcd(a_h, b_h)
    pub tail_value: u64,
    /// e, the number of trailing copies of the tail value
    pub tail_count: u64,
}

impl BlockDecomposition {
    pub fn reassemble(&self) -> Vec<u64> {
        let mut out = Vec::new();
        for &(a, b) in &self.blocks {
            out.extend_from_slice(euclid_sequence(a, b).expect("valid block").entries());
        }
        for _ in 0..self.tail_count {
            out.push(self.tail_value);
        }
        out
    }
}

/// Parse a sequence into its unique staircase form, or report where the
/// grammar fails.
pub fn block_decompose(seq: &MultiplicitySequence) -> Result<BlockDecomposition, CuspError> {
    let entries = seq.entries();
    if entries.is_empty() {
        return Err(CuspError::NotStaircase(0));
    }
    let mut runs: Vec<(u64, u64)> = Vec::new();
    for &r in entries {
        match runs.last_mut() {
            Some((v, c)) if *v == r => *c += 1,
            _ => runs.push((r, 1)),
        }
    }

    // constant sequence: the single block S(a, count*a)
    if runs.len() == 1 {
        let (a, c) = runs[0];
        let dec = BlockDecomposition {
            blocks: vec![(a, c * a)],
            tail_value: a,
            tail_count: 0,
        };
        debug_assert_eq!(dec.reassemble(), entries);
        return Ok(dec);
    }

    let mut blocks: Vec<(u64, u64)> = Vec::new();
    let mut run_idx = 0usize;
    let mut avail = runs[0].1;
    let position = |idx: usize, runs: &[(u64, u64)]| -> usize {
        runs[..idx].iter().map(|&(_, c)| c as usize).sum()
    };

    loop {
        let a = runs[run_idx].0;
        if avail == 0 {
            return Err(CuspError::NotStaircase(position(run_idx, &runs)));
        }
        if run_idx == runs.len() - 1 {
            // trailing copies of the last block's gcd
            let dec = BlockDecomposition {
                blocks,
                tail_value: a,
                tail_count: avail,
            };
            if dec.reassemble() != entries {
                return Err(CuspError::NotStaircase(position(run_idx, &runs)));
            }
            return Ok(dec);
        }

        // walk the Euclidean chain x_1 = a, x_2 = next value, ...
        let q1 = avail;
        let mut prev = a;
        let mut k = run_idx + 1;
        loop {
            let (v, c) = runs[k];
            let continues = k + 1 < runs.len() && prev == c * v + runs[k + 1].0;
            let ends = prev.is_multiple_of(v) && prev / v <= c;
            if continues {
                prev = v;
                k += 1;
            } else if ends {
                let qp = prev / v;
                let b = q1 * a + runs[run_idx + 1].0;
                blocks.push((a, b));
                let leftover = c - qp;
                if leftover == 0 && k == runs.len() - 1 {
                    let dec = BlockDecomposition {
                        blocks,
                        tail_value: v,
                        tail_count: 0,
                    };
                    if dec.reassemble() != entries {
                        return Err(CuspError::NotStaircase(position(k, &runs)));
                    }
                    return Ok(dec);
                }
                if leftover == 0 {
                    // a later, strictly smaller value cannot start a block
                    return Err(CuspError::NotStaircase(position(k + 1, &runs)));
                }
                run_idx = k;
                avail = leftover;
                break;
            } else {
                return Err(CuspError::NotStaircase(position(k, &runs)));
            }
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ObstructionConfig {
    /// Guard for the brute-force enumeration.
    pub degree_bound: u64,
    /// Enforce r_1 <= d-1 (geometric necessity); disable to study the bare
    /// numerical system.
    pub enforce_r1_bound: bool,
}

impl Default for ObstructionConfig {
    fn default() -> Self {
        ObstructionConfig {
            degree_bound: 14,
            enforce_r1_bound: true,
        }
    }
}

/// One sequence satisfying both equations, with its decomposition findings.
#[derive(Debug, Clone, Serialize)]
pub struct ObstructionCandidate {
    pub seq: Vec<u64>,
    pub last: u64,
    /// None when the sequence does not fit the staircase grammar; such
    /// solutions are reported, not rejected.
    pub staircase: Option<StaircaseFindings>,
}

#[derive(Debug, Clone, Serialize)]
pub struct StaircaseFindings {
    pub blocks: Vec<(u64, u64)>,
    pub tail_value: u64,
    pub tail_count: u64,
    /// Present when the last multiplicity is >= 2.
    pub divisibility: Option<DivisibilityFindings>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DivisibilityFindings {
    pub tail_divides_degree: bool,
    pub tail_divides_two: bool,
    pub degree_even: bool,
    /// The d/2-scaled system; present when the tail value is exactly 2.
    pub halved: Option<HalvedSystem>,
}

#[derive(Debug, Clone, Serialize)]
pub struct HalvedSystem {
    pub delta: u64,
    pub alphas: Vec<u64>,
    pub betas: Vec<u64>,
    pub e: u64,
    /// delta^2 = sum alpha_i beta_i + e
    pub square_identity: bool,
    /// 3 delta = alpha_1 + e + sum beta_i
    pub linear_identity: bool,
    pub gcd_e_alpha_h: u64,
    pub e_positive: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ObstructionReport {
    pub degree: u64,
    pub sum_target: u64,
    pub sum_sq_target: u64,
    pub candidates: Vec<ObstructionCandidate>,
    pub non_staircase_count: usize,
    pub last_ge_2_count: usize,
}

/// Enumerate all proximity-admissible sequences with sum 3d-2 and square
/// sum d^2, and analyse each against the divisibility obstructions.
pub fn section_obstruction(
    degree: u64,
    cfg: ObstructionConfig,
) -> Result<ObstructionReport, CuspError> {
    if degree == 0 {
        return Err(CuspError::NonPositiveEntry(0));
    }
    if degree > cfg.degree_bound {
        return Err(CuspError::BoundExceeded {
            degree,
            bound: cfg.degree_bound,
        });
    }
    let sum_target = 3 * degree - 2;
    let sq_target = degree * degree;
    let r1_cap = if cfg.enforce_r1_bound {
        (degree - 1).max(1)
    } else {
        sum_target
    };

    let mut raw = Vec::new();
    let mut prefix = Vec::new();
    enumerate(&mut raw, &mut prefix, r1_cap, sum_target, sq_target);

    let mut candidates = Vec::new();
    for seq in raw {
        let Ok(ms) = MultiplicitySequence::new(seq.clone()) else {
            continue; // not proximity-admissible
        };
        let last = *seq.last().expect("nonempty");
        let staircase = block_decompose(&ms).ok().map(|dec| {
            let divisibility = (last >= 2).then(|| analyse_divisibility(degree, &dec));
            StaircaseFindings {
                blocks: dec.blocks.clone(),
                tail_value: dec.tail_value,
                tail_count: dec.tail_count,
                divisibility,
            }
        });
        candidates.push(ObstructionCandidate {
            seq,
            last,
            staircase,
        });
    }
    candidates.sort_by(|a, b| a.seq.cmp(&b.seq));
    let non_staircase_count = candidates.iter().filter(|c| c.staircase.is_none()).count();
    let last_ge_2_count = candidates.iter().filter(|c| c.last >= 2).count();
    Ok(ObstructionReport {
        degree,
        sum_target,
        sum_sq_target: sq_target,
        candidates,
        non_staircase_count,
        last_ge_2_count,
    })
}

fn analyse_divisibility(degree: u64, dec: &BlockDecomposition) -> DivisibilityFindings {
    let t = dec.tail_value;
    let tail_divides_degree = degree.is_multiple_of(t);
    let tail_divides_two = 2 % t == 0;
    let degree_even = degree.is_multiple_of(2);
    let halved = (t == 2 && degree_even).then(|| {
        let delta = degree / 2;
        let alphas: Vec<u64> = dec.blocks.iter().map(|&(a, _)| a / 2).collect();
        let betas: Vec<u64> = dec.blocks.iter().map(|&(_, b)| b / 2).collect();
        let e = dec.tail_count;
        let square_identity = delta * delta
            == alphas
                .iter()
                .zip(&betas)
                .map(|(&x, &y)| x * y)
                .sum::<u64>()
                + e;
        let linear_identity =
            3 * delta == alphas.first().copied().unwrap_or(0) + e + betas.iter().sum::<u64>();
        let alpha_h = alphas.last().copied().unwrap_or(1);
        HalvedSystem {
            delta,
            alphas: alphas.clone(),
            betas,
            e,
            square_identity,
            linear_identity,
            gcd_e_alpha_h: gcd(e, alpha_h),
            e_positive: e > 0,
        }
    });
    DivisibilityFindings {
        tail_divides_degree,
        tail_divides_two,
        degree_even,
        halved,
    }
}

/// All profiles of the given degree passing the genus check, admissible for
/// the greedy proximity rule, with nonnegative nu: the exhaustive domain of
/// the pencil machinery at desk scale.
pub fn enumerate_profiles(degree: u64) -> Vec<CuspProfile> {
    let genus_target = ((degree as i64 - 1) * (degree as i64 - 2)) as u64;
    let mut out = Vec::new();
    if genus_target == 0 {
        out.push(CuspProfile::smooth(degree).expect("positive degree"));
        return out;
    }
    let mut prefix = Vec::new();
    let cap = degree - 1;
    enumerate_genus(&mut out, &mut prefix, degree, cap, genus_target);
    out.sort_by(|a, b| a.minseq.entries().cmp(b.minseq.entries()));
    out
}

fn enumerate_genus(
    out: &mut Vec<CuspProfile>,
    prefix: &mut Vec<u64>,
    degree: u64,
    cap: u64,
    remaining: u64,
) {
    if remaining == 0 {
        if let Ok(p) = CuspProfile::new(degree, prefix.clone()) {
            if p.nu_tilde() >= 0 {
                out.push(p);
            }
        }
        return;
    }
    let mut r = cap.min(remaining); // r(r-1) <= remaining needs r small anyway
    while r >= 2 {
        let weight = r * (r - 1);
        if weight <= remaining {
            prefix.push(r);
            enumerate_genus(out, prefix, degree, r, remaining - weight);
            prefix.pop();
        }
        r -= 1;
    }
}

fn enumerate(out: &mut Vec<Vec<u64>>, prefix: &mut Vec<u64>, cap: u64, sum: u64, sumsq: u64) {
    if sum == 0 {
        if sumsq == 0 && !prefix.is_empty() {
            out.push(prefix.clone());
        }
        return;
    }
    let mut v = cap.min(sum);
    while v >= 1 {
        let sq = v * v;
        if sq <= sumsq {
            let (rs, rq) = (sum - v, sumsq - sq);
            // entries in [1, v]: rs <= rq <= v * rs
            if rq >= rs && rq <= v * rs {
                prefix.push(v);
                enumerate(out, prefix, v, rs, rq);
                prefix.pop();
            }
        }
        v -= 1;
    }
}
