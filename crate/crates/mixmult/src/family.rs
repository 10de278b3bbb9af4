//! The input data shared by every computation: a family `(J; I_1, ..., I_d)`
//! of monomial ideals, with `J` primary to the maximal ideal and the `I_i`
//! proper.

use crate::degrees::{MultiDegree, Window};
use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;

/// Default display names: `x, y, z` when they suffice, `x0, x1, ...` beyond.
fn default_var_names(nvars: usize) -> Vec<String> {
    if nvars <= 3 {
        ["x", "y", "z"][..nvars].iter().map(|s| s.to_string()).collect()
    } else {
        (0..nvars).map(|i| format!("x{i}")).collect()
    }
}

/// A validated ideal family `(J; I_1, ..., I_d)` in a fixed polynomial ring.
#[derive(Clone, PartialEq, Eq, Debug, serde::Serialize)]
pub struct IdealFamily {
    nvars: usize,
    vars: Vec<String>,
    j: MonomialIdeal,
    ideals: Vec<MonomialIdeal>,
}

impl IdealFamily {
    pub fn new(j: MonomialIdeal, ideals: Vec<MonomialIdeal>) -> Result<Self> {
        let nvars = j.nvars();
        if !j.is_m_primary() {
            return Err(Error::input(
                "J must be primary to the maximal ideal (contain a power of every variable)",
            ));
        }
        for (i, ideal) in ideals.iter().enumerate() {
            if ideal.nvars() != nvars {
                return Err(Error::input(format!(
                    "I_{} lives in a different ring than J",
                    i + 1
                )));
            }
            if ideal.is_unit() {
                return Err(Error::input(format!("I_{} must be a proper ideal", i + 1)));
            }
        }
        let vars = default_var_names(nvars);
        Ok(IdealFamily { nvars, vars, j, ideals })
    }

    pub fn with_var_names(mut self, vars: Vec<String>) -> Result<Self> {
        if vars.len() != self.nvars {
            return Err(Error::input(format!(
                "{} variable names for a ring with {} variables",
                vars.len(),
                self.nvars
            )));
        }
        self.vars = vars;
        Ok(self)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    /// Number of `I` ideals.
    pub fn d(&self) -> usize {
        self.ideals.len()
    }

    pub fn j(&self) -> &MonomialIdeal {
        &self.j
    }

    /// The ideal `I_i`, zero-indexed.
    pub fn ideal(&self, i: usize) -> &MonomialIdeal {
        &self.ideals[i]
    }

    pub fn ideals(&self) -> &[MonomialIdeal] {
        &self.ideals
    }

    /// The product `I_1 ⋯ I_d` (the unit ideal when `d = 0`).
    pub fn ideals_product(&self) -> MonomialIdeal {
        let mut acc = MonomialIdeal::unit(self.nvars);
        for i in &self.ideals {
            acc = acc.product(i).expect("same ring");
        }
        acc
    }

    /// Largest generator degree across `J` and all `I_i`.
    pub fn max_input_degree(&self) -> u32 {
        std::iter::once(&self.j)
            .chain(self.ideals.iter())
            .map(MonomialIdeal::max_gen_degree)
            .max()
            .unwrap_or(1)
            .max(1)
    }

    /// Default evaluation window: polynomial behaviour is expected once every
    /// coordinate clears twice the largest input degree, and five further
    /// steps per coordinate give the fits enough cells to verify against.
    pub fn default_window(&self) -> Window {
        let lo = 2 * self.max_input_degree();
        let hi = lo + 5;
        Window::new(
            MultiDegree::new(lo, vec![lo; self.d()]),
            MultiDegree::new(hi, vec![hi; self.d()]),
        )
        .expect("lo <= hi by construction")
    }

    /// Window used when testing joint reductions: the default window pushed
    /// two steps further out, so equalities are checked strictly beyond the
    /// cells any fit was read from.
    pub fn reduction_window(&self) -> Window {
        let w = self.default_window();
        Window::new(w.lo.clone(), w.extend_hi(2).hi).expect("lo <= hi by construction")
    }
}
