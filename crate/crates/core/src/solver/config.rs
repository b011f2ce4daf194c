use crate::error::{Error, Result};
use crate::norms::NormParam;
use crate::scalar::Scalar;

/// Backtracking parameters for the gradient-flow phase and the Newton polish.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepControl<T> {
    /// First trial step of the projected ascent/descent.
    pub initial_step: T,
    /// Factor applied to the step after a rejected trial (`0 < shrink < 1`).
    pub shrink: T,
    /// Factor applied to the step after an accepted trial (`>= 1`).
    pub grow: T,
    /// Sufficient-increase constant of the Armijo test.
    pub armijo: T,
    /// Steps below this end the flow phase.
    pub min_step: T,
    /// The flow hands over to Newton once the projected gradient norm drops
    /// below `switch_tolerance * (1 + |gradient|)`.
    pub switch_tolerance: T,
    /// Iteration cap of the Newton polish.
    pub newton_iterations: usize,
}

impl<T: Scalar> Default for StepControl<T> {
    fn default() -> Self {
        Self {
            initial_step: T::lit(0.5),
            shrink: T::lit(0.5),
            grow: T::lit(1.5),
            armijo: T::lit(1e-4),
            min_step: T::lit(1e-12),
            switch_tolerance: T::lit(1e-3),
            newton_iterations: 60,
        }
    }
}

/// Multi-start search settings shared by all solvers.
#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig<T> {
    pub restarts: usize,
    /// Iteration cap of the gradient-flow / alternating phase of each restart.
    pub max_iterations: usize,
    /// Acceptance threshold on the stationarity residual.
    pub gradient_tolerance: T,
    /// Candidates closer than this (Euclidean, on concatenated vectors) are merged.
    pub dedupe_tolerance: T,
    pub seed: u64,
    pub p: NormParam<T>,
    pub step: StepControl<T>,
}

impl<T: Scalar> Default for SolverConfig<T> {
    fn default() -> Self {
        Self {
            restarts: 200,
            max_iterations: 500,
            gradient_tolerance: T::default_tolerance(),
            dedupe_tolerance: T::lit(1e-6),
            seed: 0,
            p: NormParam::euclidean(),
            step: StepControl::default(),
        }
    }
}

impl<T: Scalar> SolverConfig<T> {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_restarts(mut self, restarts: usize) -> Self {
        self.restarts = restarts;
        self
    }

    pub fn with_p(mut self, p: NormParam<T>) -> Self {
        self.p = p;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |x: T| x > T::zero() && x.is_finite();
        if self.restarts == 0 {
            return Err(Error::Argument("restarts must be at least 1".into()));
        }
        if self.max_iterations == 0 || self.step.newton_iterations == 0 {
            return Err(Error::Argument("iteration caps must be positive".into()));
        }
        if !positive(self.gradient_tolerance) || !positive(self.dedupe_tolerance) {
            return Err(Error::Argument("tolerances must be positive and finite".into()));
        }
        let s = &self.step;
        if !(positive(s.initial_step)
            && positive(s.min_step)
            && positive(s.armijo)
            && positive(s.switch_tolerance)
            && s.shrink > T::zero()
            && s.shrink < T::one()
            && s.grow >= T::one())
        {
            return Err(Error::Argument("invalid step control parameters".into()));
        }
        Ok(())
    }
}
