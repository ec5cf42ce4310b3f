//! Closed forms for the exponential-bandit friendship model.
//!
//! A pair of students explores the value of interacting. Each side learns
//! about its own binary value through breakthrough signals that arrive at an
//! exponential rate while the interaction is maintained at a flow cost that
//! depends on physical distance. The optimal policy is a belief threshold:
//! maintain until the posterior falls to a cutoff, which pins down a finite
//! exploration window and, from it, the probability that a link forms.
//!
//! Everything here is a pure function of the parameters; no state, no RNG.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Physical distance class between the two members of a dyad.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Distance {
    Near,
    Far,
}

/// Binary trait vector of one student (poverty, achievement, centrality, ...).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StudentType {
    pub traits: Vec<bool>,
}

impl StudentType {
    pub fn new(traits: Vec<bool>) -> Self {
        Self { traits }
    }

    pub fn num_categories(&self) -> usize {
        self.traits.len()
    }
}

/// Per-category trait agreement for a dyad, plus the match count.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraitSimilarity {
    /// One flag per category: true when both students fall on the same side.
    pub matches: Vec<bool>,
    /// Number of matching categories.
    pub count: usize,
}

/// Componentwise trait-agreement vector for a pair of students.
///
/// Errors when the two trait vectors have different lengths.
pub fn similarity(a: &StudentType, b: &StudentType) -> Result<TraitSimilarity> {
    if a.traits.len() != b.traits.len() {
        return Err(Error::invalid(format!(
            "trait vectors have different lengths ({} vs {})",
            a.traits.len(),
            b.traits.len()
        )));
    }
    let matches: Vec<bool> = a
        .traits
        .iter()
        .zip(&b.traits)
        .map(|(x, y)| x == y)
        .collect();
    let count = matches.iter().filter(|m| **m).count();
    Ok(TraitSimilarity { matches, count })
}

/// Model-relevant description of one dyad: trait agreement and distance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DyadModelInputs {
    pub similarity: TraitSimilarity,
    pub distance: Distance,
}

/// All closed-form quantities for one dyad at one distance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClosedFormOutputs {
    /// Belief threshold below which the interaction is abandoned.
    pub cutoff_belief: f64,
    /// Length of the exploration window.
    pub exploration_time: f64,
    /// Probability that one side keeps the interaction alive.
    pub side_prob: f64,
    /// Probability that at least one side maintains, i.e. a link forms.
    pub link_prob: f64,
    /// Link-probability gain from being near rather than far.
    pub gamma: f64,
}

/// Model primitives shared by every dyad.
///
/// `signal_rates[s]` and `worth_probs[s]` are lookup tables indexed by the
/// number of matching trait categories `s` in `0..=num_categories`. The
/// tables must be non-decreasing; the strictly increasing case corresponds
/// to the learning (signal-rate) and preference (worth-probability) channels
/// of homophily respectively. Constant tables are accepted so that either
/// channel can be switched off.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    /// Prior probability that an interaction is valuable.
    pub prior: f64,
    /// Discount rate.
    pub discount: f64,
    /// Flow cost of maintaining an interaction with a near peer.
    pub cost_near: f64,
    /// Flow cost of maintaining an interaction with a far peer.
    pub cost_far: f64,
    /// Signal arrival rate by number of matching categories (len = K + 1).
    pub signal_rates: Vec<f64>,
    /// Probability the match is worth exploring, by matching categories.
    /// All ones recovers the baseline model.
    pub worth_probs: Vec<f64>,
}

impl ModelParams {
    pub fn new(
        prior: f64,
        discount: f64,
        cost_near: f64,
        cost_far: f64,
        signal_rates: Vec<f64>,
        worth_probs: Vec<f64>,
    ) -> Result<Self> {
        let params = Self {
            prior,
            discount,
            cost_near,
            cost_far,
            signal_rates,
            worth_probs,
        };
        params.validate()?;
        Ok(params)
    }

    /// Learning-driven defaults: signal rate strictly increasing in the
    /// match count, every match worth exploring.
    pub fn default_learning() -> Self {
        Self {
            prior: 0.5,
            discount: 1.0,
            cost_near: 0.1,
            cost_far: 0.25,
            signal_rates: vec![0.5, 1.0, 1.5, 2.0],
            worth_probs: vec![1.0, 1.0, 1.0, 1.0],
        }
    }

    /// Preference-driven defaults: constant signal rate, worth probability
    /// strictly increasing in the match count.
    pub fn default_preference() -> Self {
        Self {
            prior: 0.5,
            discount: 1.0,
            cost_near: 0.1,
            cost_far: 0.25,
            signal_rates: vec![1.0, 1.0, 1.0, 1.0],
            worth_probs: vec![0.6, 0.75, 0.9, 1.0],
        }
    }

    /// Both channels active.
    pub fn default_mixed() -> Self {
        Self {
            prior: 0.5,
            discount: 1.0,
            cost_near: 0.1,
            cost_far: 0.25,
            signal_rates: vec![0.5, 1.0, 1.5, 2.0],
            worth_probs: vec![0.6, 0.75, 0.9, 1.0],
        }
    }

    /// Number of trait categories K (tables run over 0..=K matches).
    pub fn num_categories(&self) -> usize {
        self.signal_rates.len().saturating_sub(1)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.prior > 0.0 && self.prior < 1.0) {
            return Err(Error::invalid(format!(
                "prior must lie in (0,1), got {}",
                self.prior
            )));
        }
        if !(self.discount > 0.0) {
            return Err(Error::invalid(format!(
                "discount rate must be positive, got {}",
                self.discount
            )));
        }
        for (name, c) in [("cost_near", self.cost_near), ("cost_far", self.cost_far)] {
            if !(c > 0.0 && c < 1.0) {
                return Err(Error::invalid(format!("{name} must lie in (0,1), got {c}")));
            }
        }
        if self.cost_near > self.cost_far {
            return Err(Error::invalid(format!(
                "cost_near ({}) must not exceed cost_far ({}): proximity reduces cost",
                self.cost_near, self.cost_far
            )));
        }
        if self.prior <= self.cost_far {
            return Err(Error::ModelRestriction(format!(
                "prior ({}) must exceed cost_far ({}) so every interaction is worth exploring",
                self.prior, self.cost_far
            )));
        }
        if self.signal_rates.is_empty() {
            return Err(Error::invalid("signal_rates table is empty".to_string()));
        }
        if self.worth_probs.len() != self.signal_rates.len() {
            return Err(Error::invalid(format!(
                "worth_probs has {} entries but signal_rates has {}",
                self.worth_probs.len(),
                self.signal_rates.len()
            )));
        }
        for (s, &rate) in self.signal_rates.iter().enumerate() {
            if !(rate > 0.0) || !rate.is_finite() {
                return Err(Error::invalid(format!(
                    "signal rate for {s} matches must be positive and finite, got {rate}"
                )));
            }
        }
        for (s, &mu) in self.worth_probs.iter().enumerate() {
            if !(mu > 0.0 && mu <= 1.0) {
                return Err(Error::invalid(format!(
                    "worth probability for {s} matches must lie in (0,1], got {mu}"
                )));
            }
        }
        for w in self.signal_rates.windows(2) {
            if w[1] < w[0] {
                return Err(Error::invalid(
                    "signal_rates must be non-decreasing in the match count".to_string(),
                ));
            }
        }
        for w in self.worth_probs.windows(2) {
            if w[1] < w[0] {
                return Err(Error::invalid(
                    "worth_probs must be non-decreasing in the match count".to_string(),
                ));
            }
        }
        Ok(())
    }

    pub fn cost_of_distance(&self, d: Distance) -> f64 {
        match d {
            Distance::Near => self.cost_near,
            Distance::Far => self.cost_far,
        }
    }

    /// Signal arrival rate for a dyad with `matches` agreeing categories.
    pub fn signal_rate(&self, matches: usize) -> Result<f64> {
        self.signal_rates
            .get(matches)
            .copied()
            .ok_or_else(|| self.out_of_range(matches))
    }

    /// Worth probability for a dyad with `matches` agreeing categories.
    pub fn worth_prob(&self, matches: usize) -> Result<f64> {
        self.worth_probs
            .get(matches)
            .copied()
            .ok_or_else(|| self.out_of_range(matches))
    }

    fn out_of_range(&self, matches: usize) -> Error {
        Error::invalid(format!(
            "match count {matches} out of range 0..={}",
            self.num_categories()
        ))
    }

    /// Link probability for a (match count, distance) pair, worth channel
    /// included.
    pub fn link_prob(&self, matches: usize, d: Distance) -> Result<f64> {
        let lambda = self.signal_rate(matches)?;
        let mu = self.worth_prob(matches)?;
        let c = self.cost_of_distance(d);
        extended_dyad_link_prob(mu, self.prior, self.discount, lambda, c)
    }

    /// Near-minus-far link probability at a given signal rate (baseline model).
    pub fn proximity_effect(&self, lambda: f64) -> Result<f64> {
        let near = dyad_link_prob(self.prior, self.discount, lambda, self.cost_near)?;
        let far = dyad_link_prob(self.prior, self.discount, lambda, self.cost_far)?;
        Ok(near - far)
    }

    /// Near-minus-far link probability for a match count, worth channel
    /// included.
    pub fn proximity_effect_at(&self, matches: usize) -> Result<f64> {
        let near = self.link_prob(matches, Distance::Near)?;
        let far = self.link_prob(matches, Distance::Far)?;
        Ok(near - far)
    }

    /// All closed forms for a dyad with `matches` agreeing categories at
    /// distance `d`.
    pub fn closed_form(&self, matches: usize, d: Distance) -> Result<ClosedFormOutputs> {
        let lambda = self.signal_rate(matches)?;
        let mu = self.worth_prob(matches)?;
        let c = self.cost_of_distance(d);
        let cutoff = cutoff_belief(self.discount, lambda, c)?;
        let t_explore = exploration_time(self.prior, self.discount, lambda, c)?;
        let side = side_maintain_prob(self.prior, self.discount, lambda, c)?;
        let link = extended_dyad_link_prob(mu, self.prior, self.discount, lambda, c)?;
        let gamma_near = extended_dyad_link_prob(mu, self.prior, self.discount, lambda, self.cost_near)?;
        let gamma_far = extended_dyad_link_prob(mu, self.prior, self.discount, lambda, self.cost_far)?;
        Ok(ClosedFormOutputs {
            cutoff_belief: cutoff,
            exploration_time: t_explore,
            side_prob: side,
            link_prob: link,
            gamma: gamma_near - gamma_far,
        })
    }
}

fn check_rate_inputs(discount: f64, lambda: f64) -> Result<()> {
    if !(discount > 0.0) || !discount.is_finite() {
        return Err(Error::invalid(format!(
            "discount rate must be positive and finite, got {discount}"
        )));
    }
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(Error::invalid(format!(
            "signal rate must be positive and finite, got {lambda}"
        )));
    }
    Ok(())
}

fn check_exploration_inputs(prior: f64, discount: f64, lambda: f64, cost: f64) -> Result<()> {
    check_rate_inputs(discount, lambda)?;
    if !(prior > 0.0 && prior < 1.0) {
        return Err(Error::invalid(format!(
            "prior must lie in (0,1), got {prior}"
        )));
    }
    if !(cost > 0.0 && cost < 1.0) {
        return Err(Error::invalid(format!(
            "cost must lie in (0,1), got {cost}"
        )));
    }
    if prior <= cost {
        return Err(Error::ModelRestriction(format!(
            "prior ({prior}) must exceed cost ({cost})"
        )));
    }
    Ok(())
}

/// Posterior that the interaction is valuable after maintaining for time `t`
/// without a signal: `p0 e^{-lambda t} / (p0 e^{-lambda t} + 1 - p0)`.
pub fn posterior_no_signal(prior: f64, lambda: f64, t: f64) -> Result<f64> {
    if !(prior > 0.0 && prior < 1.0) {
        return Err(Error::invalid(format!(
            "prior must lie in (0,1), got {prior}"
        )));
    }
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(Error::invalid(format!(
            "signal rate must be positive and finite, got {lambda}"
        )));
    }
    if !(t >= 0.0) {
        return Err(Error::invalid(format!(
            "elapsed time must be non-negative, got {t}"
        )));
    }
    let decayed = prior * (-lambda * t).exp();
    Ok(decayed / (decayed + 1.0 - prior))
}

/// Belief cutoff at which maintaining stops being optimal:
/// `r c / (r + lambda - lambda c)`.
pub fn cutoff_belief(discount: f64, lambda: f64, cost: f64) -> Result<f64> {
    check_rate_inputs(discount, lambda)?;
    if !(cost >= 0.0 && cost < 1.0) {
        return Err(Error::invalid(format!(
            "cost must lie in [0,1), got {cost}"
        )));
    }
    Ok(discount * cost / (discount + lambda - lambda * cost))
}

/// Length of the exploration window:
/// `(1/lambda) ln( p0/(1-p0) * (r+lambda)/r * (1-c)/c )`.
///
/// Requires `prior > cost`; at the cutoff the posterior has decayed from the
/// prior down to `cutoff_belief`.
pub fn exploration_time(prior: f64, discount: f64, lambda: f64, cost: f64) -> Result<f64> {
    check_exploration_inputs(prior, discount, lambda, cost)?;
    let odds = prior / (1.0 - prior);
    let arg = odds * ((discount + lambda) / discount) * ((1.0 - cost) / cost);
    Ok(arg.ln() / lambda)
}

/// Ex-ante probability that one side of the dyad maintains the interaction:
/// `p0 (1 - (1-p0)/p0 * r/(r+lambda) * c/(1-c))`.
pub fn side_maintain_prob(prior: f64, discount: f64, lambda: f64, cost: f64) -> Result<f64> {
    check_exploration_inputs(prior, discount, lambda, cost)?;
    let inv_odds = (1.0 - prior) / prior;
    let stop_term = inv_odds * (discount / (discount + lambda)) * (cost / (1.0 - cost));
    Ok(prior * (1.0 - stop_term))
}

/// Probability that at least one side maintains, i.e. the dyad links:
/// `1 - (1-p0)^2 (1 + r/(r+lambda) * c/(1-c))^2`.
pub fn dyad_link_prob(prior: f64, discount: f64, lambda: f64, cost: f64) -> Result<f64> {
    check_exploration_inputs(prior, discount, lambda, cost)?;
    let miss = (1.0 - prior)
        * (1.0 + (discount / (discount + lambda)) * (cost / (1.0 - cost)));
    Ok(1.0 - miss * miss)
}

/// Link probability when only a `worth_prob` share of matches is worth
/// exploring at all; scales the baseline link probability.
pub fn extended_dyad_link_prob(
    worth_prob: f64,
    prior: f64,
    discount: f64,
    lambda: f64,
    cost: f64,
) -> Result<f64> {
    if !(0.0..=1.0).contains(&worth_prob) {
        return Err(Error::invalid(format!(
            "worth probability must lie in [0,1], got {worth_prob}"
        )));
    }
    Ok(worth_prob * dyad_link_prob(prior, discount, lambda, cost)?)
}
