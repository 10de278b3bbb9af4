//! Monomials as exponent vectors with checked arithmetic.

use std::cmp::Ordering;
use std::fmt;

/// A monomial in a fixed number of variables, stored as its exponent vector.
///
/// Exponent arithmetic is checked: overflow is a hard error, never a
/// wraparound.
#[derive(Clone, PartialEq, Eq, Hash, Debug, serde::Serialize)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    /// The monomial 1.
    pub fn one(nvars: usize) -> Self {
        Monomial { exps: vec![0; nvars] }
    }

    /// The variable x_i.
    pub fn var(i: usize, nvars: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Monomial { exps }
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Total degree.
    pub fn degree(&self) -> u32 {
        self.exps
            .iter()
            .fold(0u32, |acc, &e| acc.checked_add(e).expect("monomial degree overflow"))
    }

    /// Componentwise divisibility.
    pub fn divides(&self, other: &Monomial) -> bool {
        debug_assert_eq!(self.nvars(), other.nvars());
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.nvars(), other.nvars(), "monomials from different rings");
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a.checked_add(*b).expect("monomial exponent overflow"))
                .collect(),
        }
    }

    /// Componentwise maximum (least common multiple).
    pub fn lcm(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.nvars(), other.nvars(), "monomials from different rings");
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect(),
        }
    }

    /// The monomial `self / gcd(self, other)`: exponentwise `max(a - b, 0)`.
    ///
    /// This is the generator transform for colon ideals of monomial ideals.
    pub fn quot(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.nvars(), other.nvars(), "monomials from different rings");
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a.saturating_sub(*b)).collect(),
        }
    }

    /// Exact division, `None` when `other` does not divide `self`.
    pub fn div_exact(&self, other: &Monomial) -> Option<Monomial> {
        if other.divides(self) {
            Some(Monomial {
                exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a - b).collect(),
            })
        } else {
            None
        }
    }

    /// Indices of variables with positive exponent.
    pub fn support(&self) -> Vec<usize> {
        self.exps
            .iter()
            .enumerate()
            .filter_map(|(i, &e)| (e > 0).then_some(i))
            .collect()
    }

    /// Restricts the exponent vector to the given (sorted) variable subset.
    pub fn project(&self, vars: &[usize]) -> Monomial {
        Monomial { exps: vars.iter().map(|&v| self.exps[v]).collect() }
    }

    /// Renders with the given variable names, e.g. `x^2*y`.
    pub fn render(&self, vars: &[String]) -> String {
        let mut parts = Vec::new();
        for (i, &e) in self.exps.iter().enumerate() {
            let name = vars.get(i).map(String::as_str).unwrap_or("?");
            match e {
                0 => {}
                1 => parts.push(name.to_string()),
                _ => parts.push(format!("{name}^{e}")),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

/// Graded lexicographic order: total degree first, then lexicographic on
/// exponent vectors. Used for canonical generator lists and map keys.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars()).map(|i| format!("x{}", i + 1)).collect();
        write!(f, "{}", self.render(&names))
    }
}

fn compositions_into(nvars: usize, deg: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
    if nvars == 1 {
        prefix.push(deg);
        out.push(Monomial::new(prefix.clone()));
        prefix.pop();
        return;
    }
    for e in 0..=deg {
        prefix.push(e);
        compositions_into(nvars - 1, deg - e, prefix, out);
        prefix.pop();
    }
}

/// All monomials of the given total degree, in a fixed deterministic order.
pub fn monomials_of_degree(nvars: usize, deg: u32) -> Vec<Monomial> {
    if nvars == 0 {
        return if deg == 0 { vec![Monomial::one(0)] } else { Vec::new() };
    }
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(nvars);
    compositions_into(nvars, deg, &mut prefix, &mut out);
    out
}

/// All monomials of total degree at most `deg`.
pub fn monomials_up_to_degree(nvars: usize, deg: u32) -> Vec<Monomial> {
    (0..=deg).flat_map(|d| monomials_of_degree(nvars, d)).collect()
}
