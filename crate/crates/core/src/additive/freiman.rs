//! Small-doubling structure checks: the 3k-3 theorem over Z, the 2.4
//! theorem over Z/p, and Freiman isomorphism testing.

use super::sets::{AddSet, IntSet, ModSet};
use super::AdditiveError;
use crate::arith::{is_prime, mod_inverse};

/// Arithmetic progression {start, start + diff, ...} in Z.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApInt {
    pub start: i64,
    pub diff: i64,
    pub len: usize,
}

impl ApInt {
    pub fn contains_set(&self, a: &IntSet) -> bool {
        a.elems().iter().all(|&x| {
            let off = x - self.start;
            off >= 0 && off % self.diff == 0 && (off / self.diff) < self.len as i64
        })
    }
}

/// Arithmetic progression in Z/m.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApMod {
    pub modulus: usize,
    pub start: usize,
    pub diff: usize,
    pub len: usize,
}

impl ApMod {
    pub fn elements(&self) -> Vec<usize> {
        (0..self.len)
            .map(|t| (self.start + t * self.diff) % self.modulus)
            .collect()
    }

    pub fn contains_set(&self, a: &ModSet) -> bool {
        let elems = self.elements();
        a.elems().iter().all(|x| elems.contains(x))
    }
}

/// Why a structure check did not apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NotApplicable {
    /// |A + A| exceeds the doubling threshold of the theorem.
    DoublingTooLarge,
    /// |A| exceeds the density guard (k > p/35 for the 2.4 theorem).
    SizeGuard,
}

#[derive(Clone, Debug)]
pub struct Freiman3k3 {
    pub k: usize,
    pub doubling: usize,
    /// b with |A + A| = 2k - 1 + b.
    pub b: i64,
    pub applicable: bool,
    pub why_not: Option<NotApplicable>,
    /// Minimal AP containing A when the hypothesis holds; its length never
    /// exceeds k + b.
    pub ap: Option<ApInt>,
}

/// When |A + A| = 2k - 1 + b <= 3k - 4, A lies in an arithmetic progression
/// of length k + b. Differences are tried smallest-first, so the reported
/// progression is the minimal one.
pub fn freiman_3k3_check(a: &IntSet) -> Result<Freiman3k3, AdditiveError> {
    let k = a.len();
    if k < 3 {
        return Err(AdditiveError::SetTooSmall(k, 3));
    }
    let doubling = a.sumset(a).len();
    let b = doubling as i64 - (2 * k as i64 - 1);
    let applicable = doubling as i64 <= 3 * k as i64 - 4;
    if !applicable {
        return Ok(Freiman3k3 {
            k,
            doubling,
            b,
            applicable,
            why_not: Some(NotApplicable::DoublingTooLarge),
            ap: None,
        });
    }
    let target = k as i64 + b;
    let min = a.elems()[0];
    let max = *a.elems().last().unwrap();
    let span = max - min;
    let mut ap = None;
    for diff in 1..=span.max(1) {
        if a.elems().iter().all(|&x| (x - min) % diff == 0) {
            let len = (span / diff) as usize + 1;
            if (len as i64) <= target {
                ap = Some(ApInt {
                    start: min,
                    diff,
                    len,
                });
                break;
            }
        }
    }
    Ok(Freiman3k3 {
        k,
        doubling,
        b,
        applicable,
        why_not: None,
        ap,
    })
}

#[derive(Clone, Debug)]
pub struct Freiman24 {
    pub k: usize,
    pub doubling: usize,
    pub b: i64,
    pub applicable: bool,
    pub why_not: Option<NotApplicable>,
    pub ap: Option<ApMod>,
}

/// Over Z/p with p prime: when |A| = k <= p/35 and
/// |A + A| = 2k - 1 + b <= 2.4k - 3, A lies in an AP of length k + b.
/// The doubling condition is compared exactly as 5|A + A| <= 12k - 15.
pub fn freiman_24_check(a: &ModSet) -> Result<Freiman24, AdditiveError> {
    let p = a.modulus();
    if !is_prime(p as u64) {
        return Err(AdditiveError::NotPrime(p));
    }
    if a.is_empty() {
        return Err(AdditiveError::EmptySet);
    }
    let k = a.len();
    let doubling = a.sumset(a)?.len();
    let b = doubling as i64 - (2 * k as i64 - 1);
    if 35 * k > p {
        return Ok(Freiman24 {
            k,
            doubling,
            b,
            applicable: false,
            why_not: Some(NotApplicable::SizeGuard),
            ap: None,
        });
    }
    if 5 * doubling as i64 > 12 * k as i64 - 15 {
        return Ok(Freiman24 {
            k,
            doubling,
            b,
            applicable: false,
            why_not: Some(NotApplicable::DoublingTooLarge),
            ap: None,
        });
    }
    let target = (k as i64 + b) as usize;
    let mut ap = None;
    'outer: for diff in 1..p {
        let inv = mod_inverse(diff as u64, p as u64).expect("p prime") as usize;
        let mut dilated: Vec<usize> = a.elems().iter().map(|&x| x * inv % p).collect();
        dilated.sort_unstable();
        // minimal circular window covering the dilated set
        let mut max_gap = p - dilated[dilated.len() - 1] + dilated[0];
        let mut start_idx = 0;
        for i in 1..dilated.len() {
            let gap = dilated[i] - dilated[i - 1];
            if gap > max_gap {
                max_gap = gap;
                start_idx = i;
            }
        }
        let window_len = p - max_gap + 1;
        if window_len <= target {
            let start = dilated[start_idx] * diff % p;
            ap = Some(ApMod {
                modulus: p,
                start,
                diff,
                len: target,
            });
            break 'outer;
        }
    }
    Ok(Freiman24 {
        k,
        doubling,
        b,
        applicable: true,
        why_not: None,
        ap,
    })
}

/// Exhaustive Freiman-isomorphism test: the bijection must preserve
/// x + y = z + w in both directions over all quadruples. The map is given
/// as (element, image) pairs covering the first set exactly.
pub fn freiman_iso_check(
    a: &AddSet,
    b: &AddSet,
    map: &[(i64, i64)],
) -> Result<bool, AdditiveError> {
    if a.is_empty() || b.is_empty() {
        return Err(AdditiveError::EmptySet);
    }
    let a_elems = a.elems_i64();
    let b_elems = b.elems_i64();

    let mut domain: Vec<i64> = map.iter().map(|&(x, _)| x).collect();
    domain.sort_unstable();
    let mut sorted_a = a_elems.clone();
    sorted_a.sort_unstable();
    if domain.windows(2).any(|w| w[0] == w[1]) || domain != sorted_a {
        let bad = domain
            .iter()
            .find(|x| sorted_a.binary_search(x).is_err())
            .copied()
            .unwrap_or_else(|| sorted_a[0]);
        return Err(AdditiveError::NotBijection(bad));
    }
    let mut image: Vec<i64> = map.iter().map(|&(_, y)| y).collect();
    image.sort_unstable();
    let mut sorted_b = b_elems.clone();
    sorted_b.sort_unstable();
    if image.windows(2).any(|w| w[0] == w[1]) || image != sorted_b {
        let bad = image
            .iter()
            .find(|y| sorted_b.binary_search(y).is_err())
            .copied()
            .unwrap_or_else(|| sorted_b[0]);
        return Err(AdditiveError::NotBijection(bad));
    }

    let image_of = |x: i64| map.iter().find(|&&(u, _)| u == x).unwrap().1;
    let xs: Vec<i64> = map.iter().map(|&(x, _)| x).collect();
    for &x in &xs {
        for &y in &xs {
            for &z in &xs {
                for &w in &xs {
                    let lhs = a.quadruple_holds(x, y, z, w);
                    let rhs = b.quadruple_holds(image_of(x), image_of(y), image_of(z), image_of(w));
                    if lhs != rhs {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_k_minus_three() {
        // k = 4 with one hole: |A+A| = 8 = 3k - 4, b = 1
        let a = IntSet::new(vec![0, 1, 2, 4]);
        let r = freiman_3k3_check(&a).unwrap();
        assert!(r.applicable);
        assert_eq!(r.b, 1);
        let ap = r.ap.unwrap();
        assert_eq!(
            ap,
            ApInt {
                start: 0,
                diff: 1,
                len: 5
            }
        );
        assert!(ap.contains_set(&a));

        // at k = 3 the hypothesis demands b = 0, so a single hole already
        // pushes |A+A| = 6 past 3k - 4 = 5
        let hole = IntSet::new(vec![0, 1, 3]);
        let r = freiman_3k3_check(&hole).unwrap();
        assert!(!r.applicable);
        assert_eq!(r.b, 1);

        let already_ap = IntSet::new(vec![0, 2, 4]);
        let r = freiman_3k3_check(&already_ap).unwrap();
        assert_eq!(r.b, 0);
        assert_eq!(
            r.ap.unwrap(),
            ApInt {
                start: 0,
                diff: 2,
                len: 3
            }
        );

        let sparse = IntSet::new(vec![0, 1, 5]);
        let r = freiman_3k3_check(&sparse).unwrap();
        assert!(!r.applicable);
        assert_eq!(r.why_not, Some(NotApplicable::DoublingTooLarge));

        assert!(matches!(
            freiman_3k3_check(&IntSet::new(vec![0, 1])),
            Err(AdditiveError::SetTooSmall(2, 3))
        ));
    }

    #[test]
    fn two_point_four() {
        // k = 5 interval: |A+A| = 9 <= 2.4*5 - 3 = 9
        let a = ModSet::new(211, vec![0, 1, 2, 3, 4]).unwrap();
        let r = freiman_24_check(&a).unwrap();
        assert!(r.applicable);
        assert_eq!(r.b, 0);
        let ap = r.ap.unwrap();
        assert_eq!(ap.len, 5);
        assert!(ap.contains_set(&a));

        // k = 4: |A+A| >= 7 > 2.4*4 - 3 = 6.6, so the theorem cannot apply
        let small = ModSet::new(211, vec![0, 1, 2, 3]).unwrap();
        let r = freiman_24_check(&small).unwrap();
        assert!(!r.applicable);
        assert_eq!(r.why_not, Some(NotApplicable::DoublingTooLarge));

        // generic sets exceed the doubling threshold
        let generic = ModSet::new(211, vec![3, 17, 90, 140, 200]).unwrap();
        let r = freiman_24_check(&generic).unwrap();
        assert!(!r.applicable);

        // density guard
        let dense = ModSet::new(101, (0..5).collect()).unwrap();
        let r = freiman_24_check(&dense).unwrap();
        assert_eq!(r.why_not, Some(NotApplicable::SizeGuard));

        assert!(matches!(
            freiman_24_check(&ModSet::new(15, vec![0, 1]).unwrap()),
            Err(AdditiveError::NotPrime(15))
        ));
    }

    #[test]
    fn two_point_four_dilated_interval() {
        // 40 * {0..4} mod 211 needs a nontrivial dilation to expose the AP
        let a = ModSet::reduced(211, &[0, 40, 80, 120, 160]).unwrap();
        let r = freiman_24_check(&a).unwrap();
        assert!(r.applicable);
        let ap = r.ap.unwrap();
        assert!(ap.contains_set(&a), "{ap:?} should contain {a:?}");
        assert_eq!(ap.len, 5);
    }

    #[test]
    fn iso_examples() {
        let ints = AddSet::Int(IntSet::new(vec![0, 1, 2]));
        let mods9 = AddSet::Mod(ModSet::new(9, vec![0, 1, 2]).unwrap());
        let idmap = [(0, 0), (1, 1), (2, 2)];
        // no wraparound possible inside Z/9
        assert!(freiman_iso_check(&ints, &mods9, &idmap).unwrap());

        // 1 + 2 = 0 + 0 holds only mod 3
        let mods3 = AddSet::Mod(ModSet::new(3, vec![0, 1, 2]).unwrap());
        assert!(!freiman_iso_check(&mods3, &ints, &idmap).unwrap());

        // affine images inside the same cyclic group are isomorphic
        let a = AddSet::Mod(ModSet::new(17, vec![1, 5, 11]).unwrap());
        let b = AddSet::Mod(ModSet::reduced(17, &[3 + 2, 5 * 3 + 2, 11 * 3 + 2]).unwrap());
        let map = [(1, 5), (5, 0), (11, 1)]; // x -> 3x + 2 mod 17
        assert!(freiman_iso_check(&a, &b, &map).unwrap());

        assert!(matches!(
            freiman_iso_check(&ints, &mods9, &[(0, 0), (1, 1), (7, 2)]),
            Err(AdditiveError::NotBijection(7))
        ));
    }
}
