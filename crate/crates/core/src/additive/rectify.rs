//! Rectification of representative sets over p(Z/p^2) in Z/p^2, and the
//! two-carry characterization of the traditional digits.
//!
//! A set with doubling |A + A| <= 2|A| can be dilated by a unit c and
//! translated by d so that cA + d lands in (-p^2/4, p^2/4], after which
//! congruences behave like integer equations. Two independent routes are
//! implemented: an exhaustive scan over all (c, d), and a Fourier-guided
//! pipeline (dilate by the largest nonzero frequency, center on the best
//! half-circle arc, then one gcd-compression step certified by the
//! doubling dichotomy). The two routes must agree on success.
//!
//! Window membership uses exact integer tests on signed residues:
//! r in (-m/4, m/4] iff 4r > -m and 4r <= m.

use super::fourier::{coefficient, max_nonzero_fourier, FLOAT_SLACK};
use super::sets::ModSet;
use super::AdditiveError;
use crate::arith::{gcd, is_prime, mod_inverse};
use crate::carries::{carry_table, digit_base, signed_residue};
use crate::group::{CosetSystem, RepSet};

/// The base p when the system is p(Z/p^2) in Z/p^2 with p prime.
pub fn prime_square_base(system: &CosetSystem) -> Result<usize, AdditiveError> {
    match digit_base(system) {
        Some(p) if is_prime(p as u64) => Ok(p),
        _ => Err(AdditiveError::NotPrimeSquareSystem),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RectifyMethod {
    FourierGuided,
    Exhaustive,
}

/// Per-instance record of the concentration step of the Fourier route.
#[derive(Clone, Copy, Debug)]
pub struct ConcentrationCheck {
    /// Points of the dilated set inside the best half-length window.
    pub window_count: usize,
    /// (p + |A-hat(r*)|) / 2, the arc guarantee for this instance.
    pub arc_bound: f64,
    /// (p/2) (1 + sqrt((p-2) / (2(p-1)))), the analytic floor.
    pub analytic_bound: f64,
}

impl ConcentrationCheck {
    pub fn holds(&self) -> bool {
        let c = self.window_count as f64 + FLOAT_SLACK;
        c >= self.arc_bound && c >= self.analytic_bound
    }
}

#[derive(Clone, Debug)]
pub struct Rectification {
    /// Dilation, coprime to p.
    pub c: usize,
    /// Translation.
    pub d: usize,
    /// cA + d as signed residues, sorted ascending; all inside
    /// (-p^2/4, p^2/4].
    pub image: Vec<i64>,
    /// Present on the Fourier-guided route.
    pub concentration: Option<ConcentrationCheck>,
}

#[derive(Clone, Debug)]
pub enum RectifyOutcome {
    Rectified(Rectification),
    /// |A + A| > 2|A|: the structure argument does not apply.
    HypothesisNotMet {
        doubling: usize,
        size: usize,
    },
}

#[inline]
fn in_quarter_window(modulus: usize, signed: i64) -> bool {
    let m = modulus as i64;
    4 * signed > -m && 4 * signed <= m
}

fn rep_modset(system: &CosetSystem, reps: &RepSet) -> ModSet {
    let m = system.group().order();
    ModSet::new(m, reps.reps().to_vec()).expect("representatives are in range")
}

fn signed_image(modulus: usize, elems: &[usize]) -> Vec<i64> {
    let mut image: Vec<i64> = elems.iter().map(|&x| signed_residue(modulus, x)).collect();
    image.sort_unstable();
    image
}

fn affine_image(modulus: usize, elems: &[usize], c: usize, d: usize) -> Vec<usize> {
    elems.iter().map(|&x| (x * c + d) % modulus).collect()
}

fn all_in_quarter_window(modulus: usize, elems: &[usize]) -> bool {
    elems
        .iter()
        .all(|&x| in_quarter_window(modulus, signed_residue(modulus, x)))
}

/// First (c, d) in lexicographic order with cA + d inside the window.
fn exhaustive_scan(modulus: usize, p: usize, elems: &[usize]) -> Option<(usize, usize)> {
    for c in 1..modulus {
        if gcd(c as u64, p as u64) != 1 {
            continue;
        }
        let dilated: Vec<usize> = elems.iter().map(|&x| x * c % modulus).collect();
        for d in 0..modulus {
            if dilated
                .iter()
                .all(|&x| in_quarter_window(modulus, signed_residue(modulus, (x + d) % modulus)))
            {
                return Some((c, d));
            }
        }
    }
    None
}

/// Most populated window of (m+1)/2 consecutive residues (the residue form
/// of a closed half-circle arc): (start, count), smallest start among ties.
fn best_half_window(modulus: usize, elems: &[usize]) -> (usize, usize) {
    let width = modulus.div_ceil(2);
    let mut hits = vec![0u32; modulus];
    for &x in elems {
        hits[x] += 1;
    }
    let mut best = (0usize, 0usize);
    for start in 0..modulus {
        let count = (0..width)
            .map(|t| hits[(start + t) % modulus] as usize)
            .sum();
        if count > best.1 {
            best = (start, count);
        }
    }
    best
}

#[derive(Debug)]
struct FourierState {
    c: usize,
    d: usize,
    concentration: ConcentrationCheck,
}

/// Dilate by the top frequency, align the best half window onto the target
/// window, and if elements remain outside, certify the doubling dichotomy
/// and apply one gcd-compression step.
fn fourier_guided(
    modulus: usize,
    p: usize,
    elems: &[usize],
    doubling: usize,
) -> Result<Option<FourierState>, AdditiveError> {
    let a = ModSet::new(modulus, elems.to_vec()).expect("validated");
    let (r_star, _) = max_nonzero_fourier(&a)?;
    if gcd(r_star as u64, p as u64) != 1 {
        return Err(AdditiveError::InvariantViolation(format!(
            "top frequency {r_star} shares a factor with {p}; coefficients on \
             multiples of {p} must vanish for a transversal"
        )));
    }

    let dilated = affine_image(modulus, elems, r_star, 0);
    let (window_start, window_count) = best_half_window(modulus, &dilated);
    let mag = coefficient(&a, r_star).norm();
    let pf = p as f64;
    let concentration = ConcentrationCheck {
        window_count,
        arc_bound: (pf + mag) / 2.0,
        analytic_bound: pf / 2.0 * (1.0 + ((pf - 2.0) / (2.0 * (pf - 1.0))).sqrt()),
    };
    if !concentration.holds() {
        return Err(AdditiveError::InvariantViolation(format!(
            "concentration failed: window holds {window_count} of {p}, bounds \
             {} and {}",
            concentration.arc_bound, concentration.analytic_bound
        )));
    }

    // translation aligning the window start onto the least window element
    // -(m-1)/4 of the target
    let m = modulus as i64;
    let target_min = (-(m - 1) / 4).rem_euclid(m) as usize;
    let align = (target_min + modulus - window_start) % modulus;
    let placed = affine_image(modulus, &dilated, 1, align);
    if all_in_quarter_window(modulus, &placed) {
        return Ok(Some(FourierState {
            c: r_star,
            d: align,
            concentration,
        }));
    }

    // Dichotomy: with l points already inside a half window, the maximum
    // window intersection is all of A unless l < (|2A|+4)/3 or
    // m <= 6(|2A| - l). Both alternatives must fail to certify.
    let l = window_count as i64;
    let d2 = doubling as i64;
    if 3 * l < d2 + 4 || m <= 6 * (d2 - l) {
        return Ok(None);
    }

    // Compress the in-window part: its minimal progression has difference
    // gcd of the gaps, coprime to p for a transversal; dilating by the
    // inverse packs it into a short run, which is then centered.
    let inside: Vec<i64> = placed
        .iter()
        .map(|&x| signed_residue(modulus, x))
        .filter(|&s| in_quarter_window(modulus, s))
        .collect();
    let base = inside.iter().min().copied().expect("window is nonempty");
    let step = inside
        .iter()
        .fold(0u64, |acc, &x| gcd(acc, (x - base).unsigned_abs()))
        .max(1);
    let mu = mod_inverse(step, modulus as u64).ok_or_else(|| {
        AdditiveError::InvariantViolation(format!(
            "in-window progression step {step} is not invertible mod {modulus}"
        ))
    })? as usize;

    let compressed = affine_image(modulus, &placed, mu, 0);
    let run: Vec<usize> = compressed
        .iter()
        .zip(&placed)
        .filter(|(_, &orig)| in_quarter_window(modulus, signed_residue(modulus, orig)))
        .map(|(&x, _)| x)
        .collect();
    // center the compressed run at the origin
    let (run_start, run_len) = minimal_window(modulus, &run);
    let center_shift = ((modulus as i64) - run_start as i64 - (run_len as i64 - 1) / 2)
        .rem_euclid(modulus as i64) as usize;
    let finished = affine_image(modulus, &compressed, 1, center_shift);
    if all_in_quarter_window(modulus, &finished) {
        let c = r_star * mu % modulus;
        let d = (align * mu + center_shift) % modulus;
        return Ok(Some(FourierState {
            c,
            d,
            concentration,
        }));
    }
    Err(AdditiveError::InvariantViolation(
        "doubling dichotomy certifies full rectification but the compression \
         step left an element outside the window"
            .into(),
    ))
}

/// Smallest circular window [start, start + len) covering the elements.
fn minimal_window(modulus: usize, elems: &[usize]) -> (usize, usize) {
    let mut sorted = elems.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let n = sorted.len();
    if n == 0 {
        return (0, 0);
    }
    let mut max_gap = modulus - sorted[n - 1] + sorted[0];
    let mut start = sorted[0];
    for i in 1..n {
        let gap = sorted[i] - sorted[i - 1];
        if gap > max_gap {
            max_gap = gap;
            start = sorted[i];
        }
    }
    (start, modulus - max_gap + 1)
}

/// Rectifies a representative set over p(Z/p^2) in Z/p^2: finds c coprime to
/// p and d with every element of cA + d inside (-p^2/4, p^2/4]. Requires
/// |A + A| <= 2|A|.
pub fn rectify(
    system: &CosetSystem,
    reps: &RepSet,
    method: RectifyMethod,
) -> Result<RectifyOutcome, AdditiveError> {
    let p = prime_square_base(system)?;
    let modulus = p * p;
    let a = rep_modset(system, reps);
    let doubling = a.sumset(&a)?.len();
    if doubling > 2 * a.len() {
        return Ok(RectifyOutcome::HypothesisNotMet {
            doubling,
            size: a.len(),
        });
    }
    let found = match method {
        RectifyMethod::Exhaustive => {
            exhaustive_scan(modulus, p, a.elems()).map(|(c, d)| (c, d, None))
        }
        RectifyMethod::FourierGuided => fourier_guided(modulus, p, a.elems(), doubling)?
            .map(|st| (st.c, st.d, Some(st.concentration))),
    };
    match found {
        Some((c, d, concentration)) => {
            let image_elems = affine_image(modulus, a.elems(), c, d);
            let image = signed_image(modulus, &image_elems);
            debug_assert!(image.iter().all(|&s| in_quarter_window(modulus, s)));
            Ok(RectifyOutcome::Rectified(Rectification {
                c,
                d,
                image,
                concentration,
            }))
        }
        None => Err(AdditiveError::InvariantViolation(format!(
            "no rectification found for a set with doubling {doubling} <= 2|A|"
        ))),
    }
}

/// Runs both routes and checks they agree on success, returning the
/// Fourier-guided result (which carries the concentration record).
pub fn rectify_cross_checked(
    system: &CosetSystem,
    reps: &RepSet,
) -> Result<RectifyOutcome, AdditiveError> {
    let fourier = rectify(system, reps, RectifyMethod::FourierGuided)?;
    let exhaustive = rectify(system, reps, RectifyMethod::Exhaustive)?;
    match (&fourier, &exhaustive) {
        (RectifyOutcome::Rectified(_), RectifyOutcome::Rectified(_)) => Ok(fourier),
        (RectifyOutcome::HypothesisNotMet { .. }, RectifyOutcome::HypothesisNotMet { .. }) => {
            Ok(fourier)
        }
        (f, e) => {
            let pick = |o: &RectifyOutcome| match o {
                RectifyOutcome::Rectified(r) => Some((r.c, r.d)),
                _ => None,
            };
            Err(AdditiveError::RectifyDisagreement {
                fourier: pick(f),
                exhaustive: pick(e),
            })
        }
    }
}

/// The two canonical digit sets of the two-carry characterization.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CanonicalForm {
    /// {0, 1, ..., p-1}
    Standard,
    /// {1, 2, ..., p}
    Shifted,
}

impl CanonicalForm {
    pub fn elements(&self, p: usize) -> Vec<usize> {
        match self {
            CanonicalForm::Standard => (0..p).collect(),
            CanonicalForm::Shifted => (1..=p).collect(),
        }
    }
}

#[derive(Clone, Debug)]
pub enum TwoCarryOutcome {
    /// Exactly two distinct carries: cA + d is a canonical digit set, with
    /// c a unit and d a multiple of p.
    Classified {
        c: usize,
        d: usize,
        form: CanonicalForm,
        /// Outcome of the independent (c, d) scan, run for p <= 13.
        cross_checked: Option<bool>,
    },
    /// The carry table does not have exactly two distinct entries.
    NotTwoCarries { distinct: usize },
}

/// Classifies a representative set by its number of distinct carries: with
/// exactly two, produces (c, d) with c a unit, d in p(Z/p^2), and cA + d
/// equal to {0..p-1} or {1..p}. For p <= 13 the constructive answer is
/// cross-checked against an exhaustive scan.
pub fn two_carry_classify(
    system: &CosetSystem,
    reps: &RepSet,
) -> Result<TwoCarryOutcome, AdditiveError> {
    let p = prime_square_base(system)?;
    let modulus = p * p;
    let table = carry_table(system, reps);
    let distinct = table.distinct_values().len();
    if distinct != 2 {
        return Ok(TwoCarryOutcome::NotTwoCarries { distinct });
    }
    let elems = reps.reps().to_vec();

    let (c, d, form) = if p == 2 {
        scan_canonical(modulus, p, &elems).ok_or_else(|| {
            AdditiveError::InvariantViolation(
                "two-carry set of base 2 admits no canonical affine form".into(),
            )
        })?
    } else {
        constructive_classify(system, reps, p, modulus, &elems)?
    };

    // the classified map must land exactly on the canonical digits
    let mut image = affine_image(modulus, &elems, c, d);
    image.sort_unstable();
    if image != form.elements(p) || d % p != 0 {
        return Err(AdditiveError::InvariantViolation(format!(
            "classification produced c={c}, d={d} but the image is not canonical"
        )));
    }

    let cross_checked = if p <= 13 {
        let scanned = scan_canonical(modulus, p, &elems);
        Some(scanned.is_some())
    } else {
        None
    };
    Ok(TwoCarryOutcome::Classified {
        c,
        d,
        form,
        cross_checked,
    })
}

/// Exhaustive search for (c unit, d in pZ) with cA + d canonical; smallest
/// (c, d), standard form preferred.
fn scan_canonical(
    modulus: usize,
    p: usize,
    elems: &[usize],
) -> Option<(usize, usize, CanonicalForm)> {
    let standard: Vec<usize> = (0..p).collect();
    let shifted: Vec<usize> = (1..=p).collect();
    for c in 1..modulus {
        if gcd(c as u64, p as u64) != 1 {
            continue;
        }
        for t in 0..p {
            let d = t * p;
            let mut image = affine_image(modulus, elems, c, d);
            image.sort_unstable();
            if image == standard {
                return Some((c, d, CanonicalForm::Standard));
            }
            if image == shifted {
                return Some((c, d, CanonicalForm::Shifted));
            }
        }
    }
    None
}

/// Rectify, compress to a consecutive run, and read the canonical form off
/// the run's starting residue class, negating once if needed.
fn constructive_classify(
    system: &CosetSystem,
    reps: &RepSet,
    p: usize,
    modulus: usize,
    elems: &[usize],
) -> Result<(usize, usize, CanonicalForm), AdditiveError> {
    let rect = match rectify_cross_checked(system, reps)? {
        RectifyOutcome::Rectified(r) => r,
        RectifyOutcome::HypothesisNotMet { doubling, size } => {
            return Err(AdditiveError::InvariantViolation(format!(
                "two distinct carries force |A + A| <= 2|A|, yet doubling \
                 {doubling} exceeds 2 * {size}"
            )));
        }
    };
    // minimal integer progression of the rectified image
    let base = rect.image[0];
    let step = rect
        .image
        .iter()
        .fold(0u64, |acc, &x| gcd(acc, (x - base).unsigned_abs()))
        .max(1);
    let mu = mod_inverse(step, modulus as u64).ok_or_else(|| {
        AdditiveError::InvariantViolation(format!(
            "rectified progression step {step} shares a factor with {modulus}"
        ))
    })? as usize;
    let c0 = rect.c * mu % modulus;
    let d0 = rect.d * mu % modulus;
    let compressed = affine_image(modulus, elems, c0, d0);
    let (start, len) = minimal_window(modulus, &compressed);
    if len != p {
        return Err(AdditiveError::InvariantViolation(format!(
            "two-carry set compresses to a window of {len} residues, expected {p}"
        )));
    }

    // With c0 A + d0 = {u .. u+p-1}, the canonical forms reachable with a
    // final translation in pZ are those whose start is congruent to
    // u - d0 mod p; negating the map swaps that class with 1 - (u - d0).
    let attempts = [
        (c0, d0, start),
        (
            (modulus - c0) % modulus,
            (modulus - d0) % modulus,
            (2 * modulus - start - (p - 1)) % modulus,
        ),
    ];
    for (c, d_acc, u) in attempts {
        let class = (u as i64 - d_acc as i64).rem_euclid(p as i64) as usize;
        let (target_start, form) = match class {
            0 => (0, CanonicalForm::Standard),
            1 => (1, CanonicalForm::Shifted),
            _ => continue,
        };
        let shift = (modulus + target_start - u) % modulus;
        let d = (d_acc + shift) % modulus;
        return finishing_check(modulus, p, elems, c, d, form);
    }
    Err(AdditiveError::InvariantViolation(format!(
        "neither the compressed run nor its negation starts in residue class \
         0 or 1 mod {p}; a two-carry set must"
    )))
}

fn finishing_check(
    modulus: usize,
    p: usize,
    elems: &[usize],
    c: usize,
    d: usize,
    form: CanonicalForm,
) -> Result<(usize, usize, CanonicalForm), AdditiveError> {
    let mut image = affine_image(modulus, elems, c, d);
    image.sort_unstable();
    if image == form.elements(p) {
        Ok((c, d, form))
    } else {
        Err(AdditiveError::InvariantViolation(format!(
            "classification candidate c={c}, d={d} does not map onto the \
             canonical digits"
        )))
    }
}
