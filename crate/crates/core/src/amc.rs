//! Adaptive modulation: per-scheme SNR thresholds for a target BER and a
//! selector that picks the highest-order scheme the channel supports.

use rayon::prelude::*;

use crate::config::KeyValues;
use crate::constellation::Scheme;
use crate::error::{Error, Result};
use crate::sim::simulate_link;

/// Es/N0 grid searched by [`derive_thresholds`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdGrid {
    pub min_db: f64,
    pub max_db: f64,
    pub step_db: f64,
}

impl Default for ThresholdGrid {
    fn default() -> Self {
        ThresholdGrid { min_db: -1.0, max_db: 40.0, step_db: 0.25 }
    }
}

impl ThresholdGrid {
    pub fn len(&self) -> usize {
        ((self.max_db - self.min_db) / self.step_db).round() as usize + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn point(&self, index: usize) -> f64 {
        self.min_db + index as f64 * self.step_db
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolicyEntry {
    pub scheme: Scheme,
    pub min_snr_db: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AmcPolicy {
    entries: Vec<PolicyEntry>,
    target_ber: f64,
    hysteresis_db: f64,
}

impl AmcPolicy {
    pub fn new(mut entries: Vec<PolicyEntry>, target_ber: f64, hysteresis_db: f64) -> Result<Self> {
        entries.sort_by_key(|e| e.scheme.bits_per_symbol());
        let policy = AmcPolicy { entries, target_ber, hysteresis_db };
        policy.validate()?;
        Ok(policy)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.target_ber > 0.0 && self.target_ber < 0.5) {
            return Err(Error::Config(format!("target BER {} outside (0, 0.5)", self.target_ber)));
        }
        if !(self.hysteresis_db >= 0.0 && self.hysteresis_db.is_finite()) {
            return Err(Error::Config("hysteresis must be a finite, non-negative dB value".into()));
        }
        if self.entries.first().map(|e| e.scheme) != Some(Scheme::Bpsk) {
            return Err(Error::Config("policy must contain a BPSK entry".into()));
        }
        for pair in self.entries.windows(2) {
            if pair[0].scheme == pair[1].scheme {
                return Err(Error::Config(format!("duplicate policy entry for {}", pair[0].scheme)));
            }
            if !(pair[0].min_snr_db < pair[1].min_snr_db) {
                return Err(Error::Config(format!(
                    "thresholds must increase with bits per symbol: {} at {} dB, {} at {} dB",
                    pair[0].scheme, pair[0].min_snr_db, pair[1].scheme, pair[1].min_snr_db
                )));
            }
        }
        if self.entries.iter().any(|e| !e.min_snr_db.is_finite()) {
            return Err(Error::Config("thresholds must be finite".into()));
        }
        Ok(())
    }

    /// Sorted by ascending bits per symbol.
    pub fn entries(&self) -> &[PolicyEntry] {
        &self.entries
    }

    pub fn target_ber(&self) -> f64 {
        self.target_ber
    }

    pub fn hysteresis_db(&self) -> f64 {
        self.hysteresis_db
    }

    pub fn with_hysteresis(mut self, hysteresis_db: f64) -> Result<Self> {
        self.hysteresis_db = hysteresis_db;
        self.validate()?;
        Ok(self)
    }

    pub fn threshold(&self, scheme: Scheme) -> Option<f64> {
        self.entries.iter().find(|e| e.scheme == scheme).map(|e| e.min_snr_db)
    }

    pub fn lowest(&self) -> Scheme {
        self.entries[0].scheme
    }

    /// Highest scheme whose threshold plus `margin_db` is met, if any.
    fn best_with_margin(&self, snr_db: f64, margin_db: f64) -> Option<Scheme> {
        self.entries.iter().rev().find(|e| e.min_snr_db + margin_db <= snr_db).map(|e| e.scheme)
    }

    pub fn to_key_values(&self) -> KeyValues {
        let mut kv = KeyValues::new();
        kv.set("target-ber", format!("{}", self.target_ber));
        kv.set("hysteresis", format!("{}", self.hysteresis_db));
        for e in &self.entries {
            kv.set(&format!("threshold-{}", e.scheme), format!("{}", e.min_snr_db));
        }
        kv
    }

    pub fn from_key_values(kv: &KeyValues) -> Result<Self> {
        let target_ber = kv.require("target-ber")?;
        let hysteresis_db = kv.get_parsed("hysteresis")?.unwrap_or(0.0);
        let mut entries = Vec::new();
        for (key, value) in kv.iter() {
            if let Some(name) = key.strip_prefix("threshold-") {
                let min_snr_db =
                    value.parse().map_err(|_| Error::Parse(format!("invalid threshold '{value}' for {name}")))?;
                entries.push(PolicyEntry { scheme: name.parse()?, min_snr_db });
            }
        }
        AmcPolicy::new(entries, target_ber, hysteresis_db)
    }
}

/// Controller memory between selections.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkState {
    pub current_scheme: Scheme,
    pub last_snr_db: f64,
}

impl LinkState {
    pub fn new(current_scheme: Scheme) -> Self {
        LinkState { current_scheme, last_snr_db: f64::NEG_INFINITY }
    }
}

/// Picks the scheme for `snr_db`.
///
/// Downgrades take effect immediately. An upgrade above the current scheme
/// needs `snr_db` to clear the target's threshold by `hysteresis_db`; when
/// the highest qualifying scheme does not clear it, the highest scheme that
/// does is used, or the current scheme is kept. BPSK is the floor.
pub fn select_scheme(snr_db: f64, policy: &AmcPolicy, state: &LinkState) -> Scheme {
    let candidate = policy.best_with_margin(snr_db, 0.0).unwrap_or(policy.lowest());
    let current = state.current_scheme;
    if policy.threshold(current).is_none() {
        return candidate;
    }
    let bps = Scheme::bits_per_symbol;
    if bps(candidate) <= bps(current) {
        return candidate;
    }
    match policy.best_with_margin(snr_db, policy.hysteresis_db) {
        Some(upgrade) if bps(upgrade) > bps(current) => upgrade,
        _ => current,
    }
}

/// Owns a policy and the link state it drives.
#[derive(Debug, Clone)]
pub struct AmcController {
    policy: AmcPolicy,
    state: LinkState,
}

impl AmcController {
    /// Starts on the lowest scheme.
    pub fn new(policy: AmcPolicy) -> Self {
        let state = LinkState::new(policy.lowest());
        AmcController { policy, state }
    }

    pub fn with_state(policy: AmcPolicy, state: LinkState) -> Self {
        AmcController { policy, state }
    }

    pub fn update(&mut self, snr_db: f64) -> Scheme {
        let scheme = select_scheme(snr_db, &self.policy, &self.state);
        self.state = LinkState { current_scheme: scheme, last_snr_db: snr_db };
        scheme
    }

    pub fn state(&self) -> &LinkState {
        &self.state
    }

    pub fn policy(&self) -> &AmcPolicy {
        &self.policy
    }
}

pub fn throughput_bits_per_sec(scheme: Scheme, symbol_rate: f64) -> Result<f64> {
    if !(symbol_rate > 0.0) || !symbol_rate.is_finite() {
        return Err(Error::Domain(format!("symbol rate must be positive, got {symbol_rate}")));
    }
    Ok(scheme.bits_per_symbol() as f64 * symbol_rate)
}

pub const MIN_TARGET_BER: f64 = 1e-6;
pub const MAX_TARGET_BER: f64 = 1e-1;

/// Minimum Monte-Carlo budget for a target BER: 100 expected errors.
pub fn required_budget(target_ber: f64) -> u64 {
    (100.0 / target_ber).ceil() as u64
}

/// Result of a single-scheme threshold search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Threshold {
    pub scheme: Scheme,
    pub es_n0_db: f64,
    /// BER measured at `es_n0_db`.
    pub ber: f64,
    /// The target was already met at the bottom of the grid.
    pub at_grid_floor: bool,
}

/// Stream point reserved for the threshold search of `scheme`.
fn search_point(scheme: Scheme) -> u64 {
    0x7000 + scheme.bits_per_symbol() as u64
}

/// Smallest grid Es/N0 whose simulated BER is at most `target_ber`.
///
/// Every grid point reuses the same bits and noise shape, which keeps the
/// measured curve monotone enough for a bisection over the grid.
pub fn find_threshold(
    scheme: Scheme,
    target_ber: f64,
    budget_bits: u64,
    seed: u64,
    grid: &ThresholdGrid,
) -> Result<Threshold> {
    if !(target_ber > 0.0 && target_ber < 0.5) {
        return Err(Error::Config(format!("target BER {target_ber} outside (0, 0.5)")));
    }
    let k = scheme.bits_per_symbol() as u64;
    let bits = budget_bits - budget_bits % k;
    let point = search_point(scheme);
    let ber_at = |i: usize| simulate_link(scheme, grid.point(i), bits, seed, point).map(|c| c.ber());

    let top = grid.len() - 1;
    let top_ber = ber_at(top)?;
    if top_ber > target_ber {
        return Err(Error::Consistency(format!(
            "{scheme} does not reach BER {target_ber} by {} dB (measured {top_ber})",
            grid.point(top)
        )));
    }
    let floor_ber = ber_at(0)?;
    if floor_ber <= target_ber {
        return Ok(Threshold { scheme, es_n0_db: grid.point(0), ber: floor_ber, at_grid_floor: true });
    }
    // invariant: ber(lo) > target, ber(hi) <= target
    let (mut lo, mut hi, mut hi_ber) = (0usize, top, top_ber);
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        let b = ber_at(mid)?;
        if b <= target_ber {
            hi = mid;
            hi_ber = b;
        } else {
            lo = mid;
        }
    }
    Ok(Threshold { scheme, es_n0_db: grid.point(hi), ber: hi_ber, at_grid_floor: false })
}

/// Derives a policy (with zero hysteresis) by Monte-Carlo threshold search.
pub fn derive_thresholds(target_ber: f64, schemes: &[Scheme], budget_bits: u64, seed: u64) -> Result<AmcPolicy> {
    derive_thresholds_on(target_ber, schemes, budget_bits, seed, &ThresholdGrid::default())
}

pub fn derive_thresholds_on(
    target_ber: f64,
    schemes: &[Scheme],
    budget_bits: u64,
    seed: u64,
    grid: &ThresholdGrid,
) -> Result<AmcPolicy> {
    if !(MIN_TARGET_BER..=MAX_TARGET_BER).contains(&target_ber) {
        return Err(Error::Config(format!("target BER {target_ber} outside [{MIN_TARGET_BER}, {MAX_TARGET_BER}]")));
    }
    let required = required_budget(target_ber);
    if budget_bits < required {
        return Err(Error::InsufficientBudget { budget: budget_bits, required });
    }
    let mut schemes = schemes.to_vec();
    schemes.sort();
    schemes.dedup();
    if schemes.first() != Some(&Scheme::Bpsk) {
        return Err(Error::Config("scheme list must include BPSK".into()));
    }
    let found = schemes
        .par_iter()
        .map(|&s| find_threshold(s, target_ber, budget_bits, seed, grid))
        .collect::<Result<Vec<_>>>()?;
    let entries = found.iter().map(|t| PolicyEntry { scheme: t.scheme, min_snr_db: t.es_n0_db }).collect();
    AmcPolicy::new(entries, target_ber, 0.0).map_err(|e| match e {
        Error::Config(msg) => Error::Consistency(format!("derived policy is inconsistent: {msg}")),
        other => other,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn policy(hyst: f64) -> AmcPolicy {
        AmcPolicy::new(
            vec![
                PolicyEntry { scheme: Scheme::Bpsk, min_snr_db: 7.0 },
                PolicyEntry { scheme: Scheme::Qpsk, min_snr_db: 10.0 },
                PolicyEntry { scheme: Scheme::Qam16, min_snr_db: 16.5 },
                PolicyEntry { scheme: Scheme::Qam64, min_snr_db: 22.5 },
            ],
            1e-3,
            hyst,
        )
        .unwrap()
    }

    #[test]
    fn extremes() {
        let p = policy(1.0);
        assert_eq!(select_scheme(40.0, &p, &LinkState::new(Scheme::Bpsk)), Scheme::Qam64);
        assert_eq!(select_scheme(-5.0, &p, &LinkState::new(Scheme::Qam64)), Scheme::Bpsk);
    }

    #[test]
    fn hysteresis_at_qam16_threshold() {
        let p = policy(1.0);
        assert_eq!(select_scheme(16.5, &p, &LinkState::new(Scheme::Qpsk)), Scheme::Qpsk);
        assert_eq!(select_scheme(16.5, &p, &LinkState::new(Scheme::Qam16)), Scheme::Qam16);
        assert_eq!(select_scheme(17.5, &p, &LinkState::new(Scheme::Qpsk)), Scheme::Qam16);
        // downgrade is immediate
        assert_eq!(select_scheme(16.4, &p, &LinkState::new(Scheme::Qam16)), Scheme::Qpsk);
    }

    #[test]
    fn partial_upgrade() {
        // clears QAM16 + 1 dB but not QAM64 + 1 dB
        let p = policy(1.0);
        assert_eq!(select_scheme(23.0, &p, &LinkState::new(Scheme::Bpsk)), Scheme::Qam16);
    }

    #[test]
    fn throughput() {
        assert_eq!(throughput_bits_per_sec(Scheme::Qpsk, 1e6).unwrap(), 2e6);
        assert_eq!(throughput_bits_per_sec(Scheme::Qam16, 1e6).unwrap(), 4e6);
        assert!(matches!(throughput_bits_per_sec(Scheme::Bpsk, 0.0), Err(Error::Domain(_))));
        assert!(throughput_bits_per_sec(Scheme::Bpsk, -3.0).is_err());
    }

    #[test]
    fn policy_validation() {
        let bad = AmcPolicy::new(
            vec![
                PolicyEntry { scheme: Scheme::Bpsk, min_snr_db: 7.0 },
                PolicyEntry { scheme: Scheme::Qpsk, min_snr_db: 7.0 },
            ],
            1e-3,
            0.0,
        );
        assert!(bad.is_err());
        let no_bpsk = AmcPolicy::new(vec![PolicyEntry { scheme: Scheme::Qpsk, min_snr_db: 7.0 }], 1e-3, 0.0);
        assert!(no_bpsk.is_err());
        assert!(AmcPolicy::new(vec![PolicyEntry { scheme: Scheme::Bpsk, min_snr_db: 7.0 }], 0.5, 0.0).is_err());
        assert!(policy(0.0).with_hysteresis(-1.0).is_err());
    }

    #[test]
    fn policy_text_roundtrip() {
        let p = policy(0.75);
        let text = p.to_key_values().to_text();
        let back = AmcPolicy::from_key_values(&KeyValues::parse(&text).unwrap()).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn controller_tracks_state() {
        let mut c = AmcController::new(policy(0.0));
        assert_eq!(c.update(30.0), Scheme::Qam64);
        assert_eq!(c.state().last_snr_db, 30.0);
        assert_eq!(c.update(12.0), Scheme::Qpsk);
        assert_eq!(c.state().current_scheme, Scheme::Qpsk);
    }

    #[test]
    fn derive_preconditions() {
        assert!(matches!(
            derive_thresholds(1e-3, &Scheme::ALL, 1000, 0),
            Err(Error::InsufficientBudget { required: 100_000, .. })
        ));
        assert!(matches!(derive_thresholds(0.4, &Scheme::ALL, 1_000_000, 0), Err(Error::Config(_))));
        assert!(matches!(derive_thresholds(1e-2, &[Scheme::Qpsk], 100_000, 0), Err(Error::Config(_))));
    }
}
