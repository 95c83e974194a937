//! Named groups and the descriptor grammar.
//!
//! ```text
//! descriptor := factor ("x" factor)*
//! factor     := "C" n | "E" p "^" r | "D" n | "Q" n | "S" n | "A" n
//! ```
//!
//! `C<n>` cyclic of order n, `E<p>^<r>` elementary abelian of order p^r,
//! `D<n>` dihedral of order n, `Q<n>` generalized quaternion of order n
//! (a power of two, at least 8), `S<n>` and `A<n>` symmetric and alternating
//! groups on n points. Case-insensitive; factors of a product act on
//! disjoint point sets.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::is_prime;
use crate::group::{is_power_of, FiniteGroup, Perm, DEFAULT_ORDER_CAP};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Factor {
    Cyclic(usize),
    Elementary { p: usize, rank: usize },
    Dihedral(usize),
    Quaternion(usize),
    Symmetric(usize),
    Alternating(usize),
}

impl Factor {
    pub fn order(&self) -> u128 {
        match *self {
            Factor::Cyclic(n) | Factor::Dihedral(n) | Factor::Quaternion(n) => n as u128,
            Factor::Elementary { p, rank } => (p as u128).saturating_pow(rank as u32),
            Factor::Symmetric(n) => (1..=n as u128).fold(1u128, |a, b| a.saturating_mul(b)),
            Factor::Alternating(n) => ((1..=n as u128).fold(1u128, |a, b| a.saturating_mul(b)) / 2).max(1),
        }
    }

    /// Generators on `degree()` points.
    fn generators(&self) -> Vec<Perm> {
        match *self {
            Factor::Cyclic(n) => vec![cycle(n, n)],
            Factor::Elementary { p, rank } => {
                let total = p * rank;
                (0..rank).map(|i| cycle(p, p).shifted(i * p, total)).collect()
            }
            Factor::Dihedral(4) => {
                let r = Perm::from_cycles(4, &[&[0, 1], &[2, 3]]).unwrap();
                let s = Perm::from_cycles(4, &[&[0, 2], &[1, 3]]).unwrap();
                vec![r, s]
            }
            Factor::Dihedral(n) => {
                let m = n / 2;
                let r = cycle(m, m);
                let s = Perm::from_images((0..m).map(|i| ((m - i) % m) as u32).collect()).unwrap();
                vec![r, s]
            }
            Factor::Quaternion(n) => quaternion_regular(n),
            Factor::Symmetric(n) if n < 2 => vec![],
            Factor::Symmetric(2) => vec![cycle(2, 2)],
            Factor::Symmetric(n) => vec![cycle(n, 2), cycle(n, n)],
            Factor::Alternating(n) if n < 3 => vec![],
            Factor::Alternating(n) => (2..n)
                .map(|i| Perm::from_cycles(n, &[&[0, 1, i as u32]]).unwrap())
                .collect(),
        }
    }

    fn degree(&self) -> usize {
        match *self {
            Factor::Cyclic(n) | Factor::Quaternion(n) => n,
            Factor::Elementary { p, rank } => p * rank,
            Factor::Dihedral(4) => 4,
            Factor::Dihedral(n) => n / 2,
            Factor::Symmetric(n) | Factor::Alternating(n) => n,
        }
    }
}

/// Cycle `(0 1 ... len-1)` on `n` points.
fn cycle(n: usize, len: usize) -> Perm {
    let mut images: Vec<u32> = (0..n as u32).collect();
    for (i, x) in images.iter_mut().enumerate().take(len) {
        *x = ((i + 1) % len) as u32;
    }
    Perm::from_images(images).unwrap()
}

/// Left-regular representation of ⟨a, b | a^m = 1, b² = a^{m/2}, b⁻¹ab = a⁻¹⟩, m = n/2.
///
/// Element `a^i b^e` is point `i + m e`.
fn quaternion_regular(n: usize) -> Vec<Perm> {
    let m = n / 2;
    let mul = |(i, e): (usize, usize), (j, f): (usize, usize)| -> (usize, usize) {
        if e == 0 {
            ((i + j) % m, f)
        } else if f == 0 {
            ((i + m - j) % m, 1)
        } else {
            ((i + m - j + m / 2) % m, 0)
        }
    };
    let point = |(i, e): (usize, usize)| (i + m * e) as u32;
    let left = |x: (usize, usize)| {
        let images = (0..n).map(|q| point(mul(x, (q % m, q / m)))).collect();
        Perm::from_images(images).unwrap()
    };
    vec![left((1, 0)), left((0, 1))]
}

fn descriptor_error(input: &str, position: usize, message: impl Into<String>) -> Error {
    Error::Descriptor {
        input: input.to_string(),
        position,
        message: message.into(),
    }
}

/// Parses a descriptor into its factors, validating each.
pub fn parse_descriptor(input: &str) -> Result<Vec<Factor>> {
    let chars: Vec<char> = input.trim().chars().map(|c| c.to_ascii_uppercase()).collect();
    let offset = input.len() - input.trim_start().len();
    let mut pos = 0;
    let mut factors = Vec::new();
    let number = |pos: &mut usize| -> Option<usize> {
        let start = *pos;
        while *pos < chars.len() && chars[*pos].is_ascii_digit() {
            *pos += 1;
        }
        if *pos == start {
            return None;
        }
        chars[start..*pos].iter().collect::<String>().parse().ok()
    };
    if chars.is_empty() {
        return Err(descriptor_error(input, offset, "empty descriptor"));
    }
    loop {
        let start = pos;
        let Some(&letter) = chars.get(pos) else {
            return Err(descriptor_error(input, offset + pos, "expected a factor after 'x'"));
        };
        if !"CEDQSA".contains(letter) {
            return Err(descriptor_error(input, offset + start, format!("unknown group family '{letter}'")));
        }
        pos += 1;
        let n = number(&mut pos).ok_or_else(|| descriptor_error(input, offset + pos, "expected a number"))?;
        let factor = match letter {
            'C' if n >= 1 => Factor::Cyclic(n),
            'C' => return Err(descriptor_error(input, offset + start, "C0 is not a group")),
            'E' => {
                if !is_prime(n as u64) {
                    return Err(descriptor_error(input, offset + start + 1, format!("{n} is not prime")));
                }
                if chars.get(pos) != Some(&'^') {
                    return Err(descriptor_error(input, offset + pos, "expected '^' after E<p>"));
                }
                pos += 1;
                let rank =
                    number(&mut pos).ok_or_else(|| descriptor_error(input, offset + pos, "expected a rank"))?;
                if rank == 0 {
                    return Err(descriptor_error(input, offset + pos - 1, "rank must be positive"));
                }
                Factor::Elementary { p: n, rank }
            }
            'D' if n >= 4 && n % 2 == 0 => Factor::Dihedral(n),
            'D' => {
                return Err(descriptor_error(
                    input,
                    offset + start,
                    "dihedral order must be even and at least 4",
                ))
            }
            'Q' if n >= 8 && is_power_of(n, 2) => Factor::Quaternion(n),
            'Q' => {
                return Err(descriptor_error(
                    input,
                    offset + start,
                    "quaternion order must be a power of 2, at least 8",
                ))
            }
            'S' if n >= 1 => Factor::Symmetric(n),
            'A' if n >= 1 => Factor::Alternating(n),
            _ => return Err(descriptor_error(input, offset + start, format!("unknown group family '{letter}'"))),
        };
        factors.push(factor);
        match chars.get(pos) {
            None => break,
            Some('X') => pos += 1,
            Some(c) => return Err(descriptor_error(input, offset + pos, format!("unexpected '{c}'"))),
        }
    }
    Ok(factors)
}

pub fn parse_group(input: &str) -> Result<Arc<FiniteGroup>> {
    parse_group_with_cap(input, DEFAULT_ORDER_CAP)
}

pub fn parse_group_with_cap(input: &str, cap: usize) -> Result<Arc<FiniteGroup>> {
    let factors = parse_descriptor(input)?;
    let order = factors.iter().fold(1u128, |acc, f| acc.saturating_mul(f.order()));
    if order > cap as u128 {
        return Err(Error::OrderCap {
            order: order.min(usize::MAX as u128) as usize,
            cap,
        });
    }
    let total: usize = factors.iter().map(Factor::degree).sum();
    let mut gens = Vec::new();
    let mut offset = 0;
    for f in &factors {
        gens.extend(f.generators().into_iter().map(|g| g.shifted(offset, total)));
        offset += f.degree();
    }
    let name = canonical_name(input);
    FiniteGroup::generate(name, total.max(1), pad(gens, total.max(1)), cap)
}

fn pad(gens: Vec<Perm>, degree: usize) -> Vec<Perm> {
    gens.into_iter()
        .map(|g| if g.degree() < degree { g.shifted(0, degree) } else { g })
        .collect()
}

fn canonical_name(input: &str) -> String {
    input
        .trim()
        .chars()
        .map(|c| if c.eq_ignore_ascii_case(&'x') { 'x' } else { c.to_ascii_uppercase() })
        .collect()
}

/// The catalog used by exhaustive checks: every descriptor here has order at most 32.
pub const CATALOG: &[&str] = &[
    "C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "C9", "C10", "C11", "C12", "C13", "C14", "C15", "C16",
    "C32", "C2xC2", "E2^3", "E2^4", "E2^5", "E3^2", "C2xC4", "C2xC6", "C2xC8", "C4xC4", "C2xC2xC4",
    "C2xC16", "C4xC8", "C2xC2xC8", "C2xC4xC4", "D6", "D8", "D10", "D12", "D14", "D16", "D32", "Q8",
    "Q16", "Q32", "Q8xC2", "Q8xC4", "D8xC2", "D8xC4", "Q16xC2", "D16xC2", "D8xC2xC2", "Q8xC2xC2", "S3",
    "S4", "A4", "S3xC2", "A4xC2", "Q8xC3", "C3xS3",
];

/// Catalog descriptors whose group order is at most `max_order`.
pub fn catalog_up_to(max_order: usize) -> Vec<&'static str> {
    CATALOG
        .iter()
        .copied()
        .filter(|d| {
            let order = parse_descriptor(d)
                .map(|fs| fs.iter().fold(1u128, |a, f| a * f.order()))
                .unwrap_or(u128::MAX);
            order <= max_order as u128
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        for (d, n) in [
            ("C8", 8),
            ("C2xC2xC2", 8),
            ("Q8xC3", 24),
            ("E2^3", 8),
            ("D8", 8),
            ("D6", 6),
            ("Q16", 16),
            ("S4", 24),
            ("A4", 12),
            ("s3", 6),
            ("c2xc2", 4),
            ("C1", 1),
        ] {
            assert_eq!(parse_group(d).unwrap().order(), n, "{d}");
        }
    }

    #[test]
    fn catalog_groups_build_within_cap() {
        for d in CATALOG {
            let g = parse_group(d).unwrap();
            let expected = parse_descriptor(d).unwrap().iter().fold(1u128, |a, f| a * f.order());
            assert_eq!(g.order() as u128, expected, "{d}");
            assert!(g.order() <= 32);
        }
    }

    #[test]
    fn dihedral_of_order_eight_has_five_involutions() {
        let d8 = parse_group("D8").unwrap();
        assert_eq!((0..8).filter(|&a| d8.element_order(a) == 2).count(), 5);
        assert!(!d8.is_abelian());
    }

    #[test]
    fn parse_errors_report_positions() {
        match parse_descriptor("ZZZ") {
            Err(Error::Descriptor { position, .. }) => assert_eq!(position, 0),
            other => panic!("{other:?}"),
        }
        match parse_descriptor("C2xQ6") {
            Err(Error::Descriptor { position, .. }) => assert_eq!(position, 3),
            other => panic!("{other:?}"),
        }
        assert!(parse_descriptor("C2x").is_err());
        assert!(parse_descriptor("E4^2").is_err());
        assert!(parse_descriptor("").is_err());
        assert!(parse_descriptor("C2 ").is_ok());
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(parse_group("S5"), Err(Error::OrderCap { order: 120, cap: 64 })));
        assert_eq!(parse_group_with_cap("S5", 120).unwrap().order(), 120);
    }
}
