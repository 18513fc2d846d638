//! The level-k affine sl2 currents inside `V_L`, `L = Z a_1 + ... + Z a_k`:
//! `H = gamma(-1)1` with `gamma = a_1 + ... + a_k`, `E = sum e^{a_p}`,
//! `F = sum e^{-a_p}`; the Sugawara, Heisenberg and parafermion conformal
//! vectors; and the weight three vector `W^3`.

use std::fmt;
use std::sync::OnceLock;

use num_traits::One;
use serde::{Deserialize, Serialize};

use super::{commutant_kernel, generated_subspace, symmetry, Descent, Field, FockError, GradedBasis, FockSpace, FockState, Lattice, LatticePoint, LatticeVector, StateVector};
use crate::scalar::{Exp, Scalar};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum Named {
    H,
    E,
    F,
    OmegaAff,
    OmegaH,
    OmegaPara,
    W3,
}

impl Named {
    pub const ALL: [Named; 7] = [
        Named::H,
        Named::E,
        Named::F,
        Named::OmegaAff,
        Named::OmegaH,
        Named::OmegaPara,
        Named::W3,
    ];

    pub fn weight(self) -> i64 {
        match self {
            Named::H | Named::E | Named::F => 1,
            Named::OmegaAff | Named::OmegaH | Named::OmegaPara => 2,
            Named::W3 => 3,
        }
    }
}

impl fmt::Display for Named {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Named::H => "H",
            Named::E => "E",
            Named::F => "F",
            Named::OmegaAff => "omega_aff",
            Named::OmegaH => "omega_h",
            Named::OmegaPara => "omega_para",
            Named::W3 => "W3",
        };
        f.write_str(s)
    }
}

/// A mode operator `a_(n)`; it shifts weight by `wt(a) - n - 1`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ModeOp {
    Heisenberg { beta: LatticeVector, n: i64 },
    Exponential { beta: LatticePoint, n: i64 },
    Named { which: Named, n: i64 },
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConformalVectors<S> {
    pub aff: StateVector<S>,
    pub h: StateVector<S>,
    pub para: StateVector<S>,
    pub w3: StateVector<S>,
}

pub struct Sl2Lattice<S> {
    k: usize,
    space: FockSpace<S>,
    gamma: LatticeVector,
    conformal: OnceLock<ConformalVectors<S>>,
    fields: OnceLock<Vec<(Named, Field<S>)>>,
}

impl<S: Scalar> fmt::Debug for Sl2Lattice<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Sl2Lattice").field("k", &self.k).field("space", &self.space).finish()
    }
}

impl<S: Scalar> Sl2Lattice<S> {
    pub fn new(k: usize, truncation: Exp) -> Self {
        assert!(k >= 1, "level must be positive");
        Sl2Lattice {
            k,
            space: FockSpace::new(Lattice::orthogonal_roots(k), truncation),
            gamma: LatticeVector(vec![Exp::one(); k]),
            conformal: OnceLock::new(),
            fields: OnceLock::new(),
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn space(&self) -> &FockSpace<S> {
        &self.space
    }

    pub fn gamma(&self) -> &LatticeVector {
        &self.gamma
    }

    fn root(&self, p: usize, sign: i32) -> LatticePoint {
        let mut c = vec![0; self.k];
        c[p] = 2 * sign;
        LatticePoint(c)
    }

    /// `H_(n)`, `E_(n)`, `F_(n)` applied directly.
    pub fn current(&self, which: Named, n: i64, v: &StateVector<S>) -> Result<StateVector<S>, FockError> {
        match which {
            Named::H => Ok(self.space.heisenberg_apply(&self.gamma, n, v)),
            Named::E | Named::F => {
                let sign = if which == Named::E { 1 } else { -1 };
                let mut out = StateVector::zero();
                if v.truncated() {
                    out.mark_truncated();
                }
                for p in 0..self.k {
                    out.add_scaled(&S::one(), &self.space.exp_mode(&self.root(p, sign), n, v)?);
                }
                Ok(out)
            }
            other => self.named_mode(other, n, v),
        }
    }

    /// `H`, `E`, `F` as weight one vectors.
    pub fn generators(&self) -> [StateVector<S>; 3] {
        let vac = self.space.vacuum();
        [Named::H, Named::E, Named::F].map(|x| self.current(x, -1, &vac).expect("currents act on V_L"))
    }

    pub fn conformal_vectors(&self) -> &ConformalVectors<S> {
        self.conformal.get_or_init(|| self.build_conformal())
    }

    fn build_conformal(&self) -> ConformalVectors<S> {
        let k = self.k as i64;
        let vac = self.space.vacuum();
        let m = |x: Named, n: i64, v: &StateVector<S>| self.current(x, n, v).expect("currents act on V_L");
        let h1 = m(Named::H, -1, &vac);
        let hh = m(Named::H, -1, &h1);
        let ef = m(Named::E, -1, &m(Named::F, -1, &vac));
        let fe = m(Named::F, -1, &m(Named::E, -1, &vac));
        let mut aff = hh.scale(&S::from_exp(&Exp::new(1, 2)));
        aff.add_scaled(&S::one(), &ef);
        aff.add_scaled(&S::one(), &fe);
        let aff = aff.scale(&S::from_exp(&Exp::new(1, 2 * (k + 2))));
        let h = hh.scale(&S::from_exp(&Exp::new(1, 4 * k)));
        let para = aff.sub(&h);

        let c = S::from_i64;
        let f1 = m(Named::F, -1, &vac);
        let f2 = m(Named::F, -2, &vac);
        let mut w3 = m(Named::H, -3, &vac).scale(&c(k * k));
        w3.add_scaled(&c(3 * k), &m(Named::H, -2, &h1));
        w3.add_scaled(&c(2), &m(Named::H, -1, &hh));
        w3.add_scaled(&c(-6 * k), &m(Named::H, -1, &m(Named::E, -1, &f1)));
        w3.add_scaled(&c(3 * k * k), &m(Named::E, -2, &f1));
        w3.add_scaled(&c(-3 * k * k), &m(Named::E, -1, &f2));
        ConformalVectors { aff, h, para, w3 }
    }

    /// State corresponding to a named generator.
    pub fn state(&self, which: Named) -> StateVector<S> {
        match which {
            Named::H | Named::E | Named::F => self.current(which, -1, &self.space.vacuum()).unwrap(),
            Named::OmegaAff => self.conformal_vectors().aff.clone(),
            Named::OmegaH => self.conformal_vectors().h.clone(),
            Named::OmegaPara => self.conformal_vectors().para.clone(),
            Named::W3 => self.conformal_vectors().w3.clone(),
        }
    }

    pub fn field(&self, which: Named) -> &Field<S> {
        let fields = self.fields.get_or_init(|| {
            Named::ALL
                .iter()
                .map(|&x| (x, Field::of_vector(&self.space, &self.state(x))))
                .collect()
        });
        &fields.iter().find(|(x, _)| *x == which).unwrap().1
    }

    fn named_mode(&self, which: Named, n: i64, v: &StateVector<S>) -> Result<StateVector<S>, FockError> {
        self.field(which).mode(&self.space, n, v)
    }

    pub fn apply(&self, op: &ModeOp, v: &StateVector<S>) -> Result<StateVector<S>, FockError> {
        match op {
            ModeOp::Heisenberg { beta, n } => Ok(self.space.heisenberg_apply(beta, *n, v)),
            ModeOp::Exponential { beta, n } => self.space.exp_mode(beta, *n, v),
            ModeOp::Named { which, n } => self.current(*which, *n, v),
        }
    }

    /// `L(n) = omega_(n+1)` for one of the three conformal vectors.
    pub fn virasoro(&self, omega: Named, n: i64, v: &StateVector<S>) -> Result<StateVector<S>, FockError> {
        assert!(matches!(omega, Named::OmegaAff | Named::OmegaH | Named::OmegaPara));
        self.named_mode(omega, n + 1, v)
    }

    /// Central charge read off from `L(2) omega = (c/2) 1`.
    pub fn central_charge(&self, omega: Named) -> S {
        let w = self.state(omega);
        let out = self.virasoro(omega, 2, &w).expect("conformal vectors live in V_L");
        out.coeff(&FockState::vacuum(self.k)) * S::from_i64(2)
    }

    /// Highest weight vector of `L(k,i)` in `V_{L^perp}`: the sum of
    /// `e^{(a_{p_1} + ... + a_{p_i})/2}` over all `i`-subsets.
    pub fn top_vector(&self, i: usize) -> StateVector<S> {
        assert!(i <= self.k);
        let mut out = StateVector::zero();
        for subset in subsets(self.k, i) {
            let mut c = vec![0; self.k];
            for p in subset {
                c[p] = 1;
            }
            out.add_term(FockState::exponential(LatticePoint(c)), S::one());
        }
        out
    }

    /// Conformal weight of the top level of `L(k,i)` for `omega_aff`.
    pub fn affine_top_weight(&self, i: usize) -> Exp {
        let (k, i) = (self.k as i64, i as i64);
        Exp::new(i * (i + 2), 4 * (k + 2))
    }

    /// The subspace of `V_{L^perp}` generated from `top_vector(i)`, which
    /// realizes `L(k,i)`, up to `max_depth` above the top. Everything here is
    /// invariant under permuting the `a_p`, so vectors are stored by their
    /// orbit representatives; see [`symmetry`].
    pub fn affine_module(&self, i: usize, max_depth: u32) -> Result<GradedBasis<S>, FockError> {
        let ops: Vec<_> = [Named::H, Named::E, Named::F]
            .into_iter()
            .map(|x| move |n: i64, v: &StateVector<S>| symmetry::apply(v, |u| self.current(x, n, u)))
            .collect();
        generated_subspace(
            &[symmetry::compress(&self.top_vector(i))],
            &ops,
            self.affine_top_weight(i),
            max_depth,
            Descent::MinusOne,
            |s| self.charge(s),
        )
    }

    /// Heisenberg highest weight vectors of charge `lambda` in `L(k,i)`,
    /// graded by the parafermion weight; stored like [`Self::affine_module`].
    pub fn parafermion_kernel(&self, i: usize, lambda: i64, max_depth: u32) -> Result<GradedBasis<S>, FockError> {
        let module = self.affine_module(i, max_depth)?;
        Ok(self.kernel_of(&module, lambda))
    }

    /// Commutant kernel of a module from [`Self::affine_module`].
    pub fn kernel_of(&self, module: &GradedBasis<S>, lambda: i64) -> GradedBasis<S> {
        let shift = Exp::new(lambda * lambda, 4 * self.k as i64);
        commutant_kernel(module, lambda, shift, |m, v| {
            symmetry::apply(v, |u| Ok(self.space.heisenberg_apply(&self.gamma, m, u))).expect("Heisenberg modes are total")
        })
    }

    /// Full vector of a representative-stored invariant vector.
    pub fn expand(&self, v: &StateVector<S>) -> StateVector<S> {
        symmetry::expand(v)
    }

    /// `H_0` eigenvalue of a Fock state.
    pub fn charge(&self, s: &FockState) -> i64 {
        self.space.lattice().pair_point(&self.gamma, &s.point).to_integer()
    }
}

fn subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for p in start..n {
            cur.push(p);
            rec(p + 1, n, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, r, &mut Vec::new(), &mut out);
    out
}

impl<S: Scalar> ConformalVectors<S> {
    pub fn is_zero_combination(&self) -> bool {
        self.aff.sub(&self.h).sub(&self.para).is_zero()
    }
}
