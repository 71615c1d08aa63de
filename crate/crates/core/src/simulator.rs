//! Discrete-event simulation of fleet maintenance under a (PM interval,
//! OM threshold) policy.
//!
//! Each luminaire carries candidate event times (next scheduled PM,
//! predicted corrective times from its presampled degradation path and
//! driver lifetime, and the completion time of any ongoing service); the
//! system advances to the minimum candidate, processes every event sharing
//! that timestamp as a single site visit, sweeps opportunistic replacements,
//! and logs the luminaire-state vector. Performance-record events are
//! interleaved so the logged trajectory has bounded gaps for the deficiency
//! metric.
//!
//! Timing conventions:
//! - The PM clock restarts at the *replacement event* (so a failure-free
//!   unit is serviced at exact multiples of the PM interval).
//! - The degradation/driver clocks restart at *service completion*; during
//!   service the unit is dark (state 1).
//! - Opportunistic replacements share the completion time of the visit that
//!   triggered them.
//!
//! Randomness is keyed by (seed, run tags, luminaire index, replacement
//! ordinal), so a given luminaire's k-th replacement sees the same
//! degradation path and driver lifetime regardless of policy — common
//! random numbers across policies by construction.

use crate::degradation::{
    sample_path, AgingClock, GammaDegradationModel, LuminairePath, WeibullModel, DAYS_PER_YEAR,
};
use crate::error::{Error, Result};
use crate::rng::stream;
use serde::{Deserialize, Serialize};

/// Maintenance policy decision variables.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Policy {
    /// Preventive-maintenance interval in days, in (0, horizon].
    pub t_pm_days: f64,
    /// Opportunistic threshold on the maintenance opportunity window, [0, 1].
    pub h_om: f64,
}

impl Policy {
    pub fn new(t_pm_days: f64, h_om: f64) -> Result<Self> {
        if !(t_pm_days > 0.0) {
            return Err(Error::domain(format!(
                "PM interval must be positive, got {t_pm_days}"
            )));
        }
        if !(0.0..=1.0).contains(&h_om) {
            return Err(Error::domain(format!(
                "OM threshold must be in [0, 1], got {h_om}"
            )));
        }
        Ok(Self { t_pm_days, h_om })
    }

    /// Equivalent OM-eligible age `T_PM * (1 - H_OM)`, computed as
    /// `t_pm - t_pm * h_om` so the tabulated integer cases come out exact.
    pub fn om_age_days(&self) -> f64 {
        self.t_pm_days - self.t_pm_days * self.h_om
    }
}

/// Maintenance opportunity window: remaining time to the unit's next
/// scheduled PM as a fraction of the PM interval.
pub fn maintenance_opportunity_window(t_now: f64, t_pm_next: f64, t_pm: f64) -> f64 {
    debug_assert!(t_pm_next >= t_now && t_pm > 0.0);
    (t_pm_next - t_now) / t_pm
}

/// OM decision rule: eligible when the window has shrunk to the threshold
/// (inclusive).
pub fn om_eligible(mow: f64, h_om: f64) -> bool {
    mow <= h_om
}

/// On-site service durations in days.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ServiceDurations {
    /// Corrective replacement after a degradation failure.
    pub cm_pf_days: f64,
    /// Corrective replacement after a driver failure.
    pub cm_df_days: f64,
    /// Planned (PM) replacement.
    pub replace_days: f64,
}

impl Default for ServiceDurations {
    fn default() -> Self {
        Self {
            cm_pf_days: 3.0,
            cm_df_days: 2.0,
            replace_days: 1.0,
        }
    }
}

impl ServiceDurations {
    pub fn validate(&self) -> Result<()> {
        if [self.cm_pf_days, self.cm_df_days, self.replace_days]
            .iter()
            .any(|d| !(*d > 0.0))
        {
            return Err(Error::domain(
                "service durations must be positive".to_string(),
            ));
        }
        Ok(())
    }
}

/// Stochastic models shared by every luminaire in the fleet for one run.
#[derive(Debug, Clone)]
pub struct FleetModel {
    pub degradation: GammaDegradationModel,
    pub temperature_k: f64,
    pub driver: WeibullModel,
    pub clock: AgingClock,
    /// Presampled degradation grid resolution in days.
    pub grid_step_days: f64,
}

impl FleetModel {
    fn sample_install(
        &self,
        horizon_days: f64,
        seed: u64,
        tags: &[u64],
        luminaire: usize,
        ordinal: u32,
    ) -> Result<LuminairePath> {
        let mut tag_path: Vec<u64> = tags.to_vec();
        tag_path.extend_from_slice(&[luminaire as u64, ordinal as u64, 0x70]);
        let mut path_stream = stream(seed, &tag_path);
        let path = sample_path(
            &self.degradation,
            self.temperature_k,
            self.clock,
            self.grid_step_days,
            horizon_days,
            &mut path_stream,
        )?;
        let mut tag_drv: Vec<u64> = tags.to_vec();
        tag_drv.extend_from_slice(&[luminaire as u64, ordinal as u64, 0x64]);
        let mut driver_stream = stream(seed, &tag_drv);
        Ok(path.with_driver_failure(self.driver.sample(&mut driver_stream)))
    }
}

/// Candidate event times for one luminaire; absent events sit at infinity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EventVector {
    pub pm: f64,
    pub cm_driver: f64,
    pub cm_degradation: f64,
    pub service_end: f64,
    pub record: f64,
}

impl EventVector {
    pub fn min_time(&self) -> f64 {
        self.pm
            .min(self.cm_driver)
            .min(self.cm_degradation)
            .min(self.service_end)
            .min(self.record)
    }
}

/// Replacement / visit accounting for one run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaintenanceCounts {
    pub cm_visits: u32,
    pub pm_visits: u32,
    pub cm_replacements: u32,
    pub pm_replacements: u32,
    pub om_replacements: u32,
    pub om_by_pm: u32,
    pub om_by_cm: u32,
}

impl MaintenanceCounts {
    /// Total site visits.
    pub fn total_visits(&self) -> u32 {
        self.cm_visits + self.pm_visits
    }

    /// Total luminaire replacements.
    pub fn total_replacements(&self) -> u32 {
        self.cm_replacements + self.pm_replacements + self.om_replacements
    }
}

/// Replacement categories used in the per-year breakdown, in column order
/// (PM, CM, OM at PM visits, OM at CM visits).
pub const BREAKDOWN_LABELS: [&str; 4] = ["pm", "cm", "om_by_pm", "om_by_cm"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EventKind {
    Pm,
    CmDriver,
    CmDegradation,
    OmReplace,
    ServiceEnd,
    Record,
}

impl EventKind {
    pub fn label(&self) -> &'static str {
        match self {
            EventKind::Pm => "pm",
            EventKind::CmDriver => "cm_df",
            EventKind::CmDegradation => "cm_pf",
            EventKind::OmReplace => "om",
            EventKind::ServiceEnd => "end",
            EventKind::Record => "record",
        }
    }
}

/// One line of the optional event log.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LoggedEvent {
    pub t_days: f64,
    pub kind: EventKind,
    pub luminaire: usize,
}

/// Complete output of one simulation run.
#[derive(Debug, Clone, PartialEq)]
pub struct SimOutput {
    /// Coalesced, strictly increasing event times (first 0, last = horizon).
    pub event_days: Vec<f64>,
    /// Luminaire-state vector logged at each event time (K x J).
    pub states: Vec<Vec<f64>>,
    pub counts: MaintenanceCounts,
    /// Replacements per calendar year, split into [`BREAKDOWN_LABELS`] columns.
    pub yearly: Vec<[u32; 4]>,
    pub event_log: Vec<LoggedEvent>,
}

/// Simulation settings independent of the policy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimOptions {
    pub horizon_days: f64,
    pub record_interval_days: f64,
    pub durations: ServiceDurations,
    /// Collect the per-event log (cheap; off for large sweeps).
    pub log_events: bool,
}

impl SimOptions {
    pub fn validate(&self) -> Result<()> {
        if !(self.horizon_days > 0.0) {
            return Err(Error::domain("horizon must be positive".to_string()));
        }
        if !(self.record_interval_days > 0.0) {
            return Err(Error::domain(
                "record interval must be positive".to_string(),
            ));
        }
        self.durations.validate()
    }
}

struct Unit {
    install_day: f64,
    path: LuminairePath,
    next_pm: f64,
    driver_fail: f64,
    degrade_fail: f64,
    service_end: f64,
    ordinal: u32,
}

impl Unit {
    fn in_service(&self) -> bool {
        self.service_end.is_finite()
    }

    fn state_at(&self, t: f64) -> f64 {
        if self.in_service() || t >= self.driver_fail {
            return 1.0;
        }
        self.path.value_at(t - self.install_day)
    }

    fn event_vector(&self, record: f64) -> EventVector {
        if self.in_service() {
            EventVector {
                pm: f64::INFINITY,
                cm_driver: f64::INFINITY,
                cm_degradation: f64::INFINITY,
                service_end: self.service_end,
                record,
            }
        } else {
            EventVector {
                pm: self.next_pm,
                cm_driver: self.driver_fail,
                cm_degradation: self.degrade_fail,
                service_end: f64::INFINITY,
                record,
            }
        }
    }
}

enum TriggerKind {
    Pm,
    CmDriver,
    CmDegradation,
}

/// Run the discrete-event simulation for one policy and one fleet
/// realization. The failure realization is fully determined by
/// (fleet, seed, run_tags, luminaire count); two calls with identical
/// arguments produce identical output bit for bit.
pub fn run(
    policy: &Policy,
    fleet: &FleetModel,
    n_luminaires: usize,
    opts: &SimOptions,
    seed: u64,
    run_tags: &[u64],
) -> Result<SimOutput> {
    opts.validate()?;
    if n_luminaires == 0 {
        return Err(Error::domain("fleet must not be empty".to_string()));
    }
    let horizon = opts.horizon_days;

    let mut units = Vec::with_capacity(n_luminaires);
    for j in 0..n_luminaires {
        let path = fleet.sample_install(horizon, seed, run_tags, j, 0)?;
        units.push(Unit {
            install_day: 0.0,
            next_pm: policy.t_pm_days,
            driver_fail: path.driver_failure_days,
            degrade_fail: path.pf_first_passage_days,
            service_end: f64::INFINITY,
            path,
            ordinal: 0,
        });
    }

    let mut next_record = 0.0f64;
    let years = ((horizon / DAYS_PER_YEAR).ceil() as usize).max(1);
    let mut yearly = vec![[0u32; 4]; years];
    let mut counts = MaintenanceCounts::default();
    let mut event_days: Vec<f64> = Vec::new();
    let mut states: Vec<Vec<f64>> = Vec::new();
    let mut event_log = Vec::new();

    let year_of = |t: f64| ((t / DAYS_PER_YEAR) as usize).min(years - 1);

    loop {
        // Next system event: minimum over all per-luminaire candidates.
        let mut t_next = next_record;
        for u in &units {
            t_next = t_next.min(u.event_vector(next_record).min_time());
        }
        if !t_next.is_finite() {
            return Err(Error::numerical("non-finite next event time".to_string()));
        }
        if t_next > horizon {
            break;
        }

        // 1. Service completions: the unit returns as new, aging from now.
        for (j, u) in units.iter_mut().enumerate() {
            if u.in_service() && u.service_end == t_next {
                u.ordinal += 1;
                let path = fleet.sample_install(horizon - t_next, seed, run_tags, j, u.ordinal)?;
                u.install_day = t_next;
                u.driver_fail = t_next + path.driver_failure_days;
                u.degrade_fail = t_next + path.pf_first_passage_days;
                u.path = path;
                u.service_end = f64::INFINITY;
                if opts.log_events {
                    event_log.push(LoggedEvent {
                        t_days: t_next,
                        kind: EventKind::ServiceEnd,
                        luminaire: j,
                    });
                }
            }
        }

        // 2. Maintenance triggers due now, in luminaire order. A PM due at
        //    the same instant as a failure is processed as the PM.
        let mut triggers: Vec<(usize, TriggerKind)> = Vec::new();
        for (j, u) in units.iter().enumerate() {
            if u.in_service() {
                continue;
            }
            if u.next_pm == t_next {
                triggers.push((j, TriggerKind::Pm));
            } else if u.driver_fail == t_next {
                triggers.push((j, TriggerKind::CmDriver));
            } else if u.degrade_fail == t_next {
                triggers.push((j, TriggerKind::CmDegradation));
            }
        }

        if !triggers.is_empty() {
            // All work sharing a timestamp is one site visit, classified PM
            // if any scheduled replacement is due, else CM.
            let pm_visit = triggers.iter().any(|(_, k)| matches!(k, TriggerKind::Pm));
            if pm_visit {
                counts.pm_visits += 1;
            } else {
                counts.cm_visits += 1;
            }
            let year = year_of(t_next);
            let mut visit_end = t_next;
            for (j, kind) in &triggers {
                let (duration, event_kind) = match kind {
                    TriggerKind::Pm => (opts.durations.replace_days, EventKind::Pm),
                    TriggerKind::CmDriver => (opts.durations.cm_df_days, EventKind::CmDriver),
                    TriggerKind::CmDegradation => {
                        (opts.durations.cm_pf_days, EventKind::CmDegradation)
                    }
                };
                match kind {
                    TriggerKind::Pm => {
                        counts.pm_replacements += 1;
                        yearly[year][0] += 1;
                    }
                    _ => {
                        counts.cm_replacements += 1;
                        yearly[year][1] += 1;
                    }
                }
                let u = &mut units[*j];
                u.service_end = t_next + duration;
                // PM clock restarts at the replacement event.
                u.next_pm = t_next + policy.t_pm_days;
                u.driver_fail = f64::INFINITY;
                u.degrade_fail = f64::INFINITY;
                visit_end = visit_end.max(u.service_end);
                if opts.log_events {
                    event_log.push(LoggedEvent {
                        t_days: t_next,
                        kind: event_kind,
                        luminaire: *j,
                    });
                }
            }

            // 3. Opportunistic sweep over idle units: replace those close
            //    enough to their next PM; they share the visit completion.
            for j in 0..units.len() {
                if units[j].in_service() {
                    continue;
                }
                let mow =
                    maintenance_opportunity_window(t_next, units[j].next_pm, policy.t_pm_days);
                if om_eligible(mow, policy.h_om) {
                    counts.om_replacements += 1;
                    if pm_visit {
                        counts.om_by_pm += 1;
                        yearly[year][2] += 1;
                    } else {
                        counts.om_by_cm += 1;
                        yearly[year][3] += 1;
                    }
                    let u = &mut units[j];
                    u.service_end = visit_end;
                    u.next_pm = t_next + policy.t_pm_days;
                    u.driver_fail = f64::INFINITY;
                    u.degrade_fail = f64::INFINITY;
                    if opts.log_events {
                        event_log.push(LoggedEvent {
                            t_days: t_next,
                            kind: EventKind::OmReplace,
                            luminaire: j,
                        });
                    }
                }
            }
        }

        // 4. Record-event bookkeeping: fixed cadence plus a final event at
        //    the horizon so the logged span covers it exactly.
        if next_record == t_next {
            if opts.log_events {
                event_log.push(LoggedEvent {
                    t_days: t_next,
                    kind: EventKind::Record,
                    luminaire: 0,
                });
            }
            let stepped = t_next + opts.record_interval_days;
            next_record = if stepped >= horizon {
                if t_next < horizon {
                    horizon
                } else {
                    f64::INFINITY
                }
            } else {
                stepped
            };
        }

        // 5. Log the post-event system state.
        let row: Vec<f64> = units.iter().map(|u| u.state_at(t_next)).collect();
        debug_assert!(event_days.last().map_or(true, |&last| t_next > last));
        event_days.push(t_next);
        states.push(row);
    }

    debug_assert_eq!(counts.om_replacements, counts.om_by_pm + counts.om_by_cm);
    Ok(SimOutput {
        event_days,
        states,
        counts,
        yearly,
        event_log,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Fleet whose packages essentially never degrade.
    fn inert_degradation() -> GammaDegradationModel {
        GammaDegradationModel::new(-40.0, 0.1, 0.0, 0.0).unwrap()
    }

    fn failure_free_fleet() -> FleetModel {
        FleetModel {
            degradation: inert_degradation(),
            temperature_k: 318.15,
            // Driver lifetimes around 2.7 million days.
            driver: WeibullModel::new(500.0, 1e6).unwrap(),
            clock: AgingClock::default(),
            grid_step_days: 10.0,
        }
    }

    fn near_deterministic_driver_fleet() -> FleetModel {
        FleetModel {
            driver: WeibullModel::new(500.0, 2000.0).unwrap(),
            ..failure_free_fleet()
        }
    }

    fn case_fleet() -> FleetModel {
        FleetModel {
            degradation: GammaDegradationModel::new(2.2393, 0.8841, 3.7446, 0.0815).unwrap(),
            temperature_k: 318.15,
            driver: WeibullModel::new(21.82, 2818.09).unwrap(),
            clock: AgingClock::default(),
            grid_step_days: 10.0,
        }
    }

    fn opts() -> SimOptions {
        SimOptions {
            horizon_days: 18_250.0,
            record_interval_days: 30.0,
            durations: ServiceDurations::default(),
            log_events: false,
        }
    }

    #[test]
    fn om_age_table_values_are_exact() {
        let a = Policy::new(2190.0, 0.2).unwrap();
        assert_eq!(a.om_age_days(), 1752.0);
        let b = Policy::new(11_315.0, 0.8).unwrap();
        assert_eq!(b.om_age_days(), 2263.0);
        let c = Policy::new(4000.0, 1.0).unwrap();
        assert_eq!(c.om_age_days(), 0.0);
    }

    #[test]
    fn mow_examples() {
        assert_eq!(maintenance_opportunity_window(100.0, 100.0, 2190.0), 0.0);
        assert_eq!(
            maintenance_opportunity_window(1752.0, 2190.0, 2190.0),
            438.0 / 2190.0
        );
        assert_eq!(maintenance_opportunity_window(0.0, 2190.0, 2190.0), 1.0);
    }

    #[test]
    fn om_eligibility_is_inclusive() {
        assert!(om_eligible(0.2, 0.2));
        assert!(!om_eligible(0.3, 0.2));
        for x in [0.0, 0.37, 0.99, 1.0] {
            assert!(om_eligible(x, 1.0));
        }
    }

    #[test]
    fn pure_pm_schedule_single_unit() {
        let policy = Policy::new(2190.0, 0.0).unwrap();
        let out = run(&policy, &failure_free_fleet(), 1, &opts(), 42, &[0]).unwrap();
        // floor(18250 / 2190) = 8 PM visits at exact multiples.
        assert_eq!(out.counts.pm_replacements, 8);
        assert_eq!(out.counts.pm_visits, 8);
        assert_eq!(out.counts.cm_replacements, 0);
        assert_eq!(out.counts.om_replacements, 0);
        assert_eq!(out.counts.total_visits(), 8);
        for k in 1..=8 {
            let t = k as f64 * 2190.0;
            assert!(
                out.event_days.contains(&t),
                "expected a PM event at day {t}"
            );
        }
    }

    #[test]
    fn synchronized_pms_coalesce_into_one_visit() {
        let policy = Policy::new(2190.0, 0.0).unwrap();
        let out = run(&policy, &failure_free_fleet(), 5, &opts(), 42, &[0]).unwrap();
        // Five units replaced per cycle, one visit per cycle.
        assert_eq!(out.counts.pm_visits, 8);
        assert_eq!(out.counts.pm_replacements, 40);
    }

    #[test]
    fn replace_everything_policy_replaces_fleet_each_cycle() {
        let policy = Policy::new(2190.0, 1.0).unwrap();
        let out = run(&policy, &failure_free_fleet(), 6, &opts(), 7, &[0]).unwrap();
        // All six units are PM-due simultaneously, so OM never has work.
        assert_eq!(out.counts.pm_replacements, 48);
        assert_eq!(out.counts.om_replacements, 0);
        assert_eq!(out.counts.total_replacements(), 48);
    }

    #[test]
    fn conservation_identities_hold() {
        let fleet = case_fleet();
        for seed in 0..12 {
            for &(t_pm, h_om) in &[(2190.0, 0.2), (5110.0, 0.5), (18_250.0, 1.0), (730.0, 0.05)] {
                let policy = Policy::new(t_pm, h_om).unwrap();
                let out = run(&policy, &fleet, 8, &opts(), seed, &[3]).unwrap();
                let c = out.counts;
                assert_eq!(c.total_visits(), c.cm_visits + c.pm_visits);
                assert_eq!(
                    c.total_replacements(),
                    c.cm_replacements + c.pm_replacements + c.om_replacements
                );
                assert_eq!(c.om_replacements, c.om_by_pm + c.om_by_cm);
                let yearly_total: u32 = out.yearly.iter().flatten().sum();
                assert_eq!(yearly_total, c.total_replacements());
                for w in out.event_days.windows(2) {
                    assert!(w[1] > w[0], "event times must strictly increase");
                }
                assert_eq!(out.event_days.first(), Some(&0.0));
                assert_eq!(out.event_days.last(), Some(&18_250.0));
            }
        }
    }

    #[test]
    fn identical_seeds_are_bit_identical() {
        let fleet = case_fleet();
        // Failure-driven regime so seeds actually matter to the counts.
        let policy = Policy::new(3650.0, 0.3).unwrap();
        let a = run(&policy, &fleet, 10, &opts(), 99, &[1]).unwrap();
        let b = run(&policy, &fleet, 10, &opts(), 99, &[1]).unwrap();
        assert_eq!(a, b);
        let c = run(&policy, &fleet, 10, &opts(), 100, &[1]).unwrap();
        assert_ne!(a.states, c.states);
    }

    #[test]
    fn renewal_rate_matches_cycle_length() {
        // Near-deterministic drivers, no degradation, PM never due, no OM:
        // each unit renews every (lifetime + service) days.
        let policy = Policy::new(100_000.0, 0.0).unwrap();
        let fleet = near_deterministic_driver_fleet();
        let mut total = 0u32;
        let n_units = 10;
        let n_runs = 20;
        for seed in 0..n_runs {
            let out = run(&policy, &fleet, n_units, &opts(), seed, &[5]).unwrap();
            assert_eq!(out.counts.pm_replacements, 0);
            assert_eq!(out.counts.om_replacements, 0);
            total += out.counts.cm_replacements;
        }
        let per_unit = total as f64 / (n_units * n_runs as usize) as f64;
        let expected = 18_250.0 / (2000.0 + 2.0);
        let rel = (per_unit - expected).abs() / expected;
        assert!(
            rel < 0.05,
            "mean replacements per unit {per_unit} vs renewal oracle {expected}"
        );
    }

    #[test]
    fn failed_unit_is_dark_until_service_completes() {
        // One unit with a driver failure near day 2000; daily records.
        let policy = Policy::new(100_000.0, 0.0).unwrap();
        let fleet = near_deterministic_driver_fleet();
        let o = SimOptions {
            horizon_days: 2100.0,
            record_interval_days: 1.0,
            durations: ServiceDurations::default(),
            log_events: true,
        };
        let out = run(&policy, &fleet, 1, &o, 3, &[0]).unwrap();
        let fail_t = out
            .event_log
            .iter()
            .find(|e| e.kind == EventKind::CmDriver)
            .expect("driver failure should occur")
            .t_days;
        let end_t = fail_t + 2.0;
        for (t, row) in out.event_days.iter().zip(&out.states) {
            if *t >= fail_t && *t < end_t {
                assert_eq!(row[0], 1.0, "unit must be dark during service at t={t}");
            }
            if *t >= end_t && *t < fail_t + 30.0 {
                assert!(row[0] < 0.5, "unit must be restored after service at t={t}");
            }
        }
    }

    #[test]
    fn om_sweep_follows_cm_and_shares_completion() {
        // Unit 0's driver fails around day 2000; unit 1 is then within its
        // OM window (next PM at 2190, mow ~ 0.09 <= 0.2), so it is swept and
        // both return to service together.
        let policy = Policy::new(2190.0, 0.2).unwrap();
        let fleet = near_deterministic_driver_fleet();
        let o = SimOptions {
            horizon_days: 2150.0,
            record_interval_days: 1.0,
            durations: ServiceDurations::default(),
            log_events: true,
        };
        let out = run(&policy, &fleet, 2, &o, 11, &[0]).unwrap();
        assert_eq!(out.counts.cm_visits, 1);
        assert_eq!(out.counts.pm_visits, 0);
        assert_eq!(out.counts.cm_replacements, 1);
        assert_eq!(out.counts.om_replacements, 1);
        assert_eq!(out.counts.om_by_cm, 1);
        let fail_t = out
            .event_log
            .iter()
            .find(|e| e.kind == EventKind::CmDriver)
            .unwrap()
            .t_days;
        for (t, row) in out.event_days.iter().zip(&out.states) {
            if *t >= fail_t && *t < fail_t + 2.0 {
                assert_eq!(row[0], 1.0);
                assert_eq!(row[1], 1.0);
            }
            if (*t - (fail_t + 2.0)).abs() < 0.5 {
                assert!(row[0] < 0.5 && row[1] < 0.5);
            }
        }
    }

    #[test]
    fn raising_om_threshold_never_reduces_om_plus_pm_with_crn() {
        // Same failure realization replayed (luminaire/ordinal-keyed
        // streams): a wider OM window can only add opportunistic work.
        let fleet = case_fleet();
        for seed in [1u64, 2, 3] {
            let mut prev = 0u32;
            for &h in &[0.0, 0.25, 0.5, 0.75, 1.0] {
                let policy = Policy::new(3650.0, h).unwrap();
                let out = run(&policy, &fleet, 6, &opts(), seed, &[9]).unwrap();
                let om_pm = out.counts.om_replacements + out.counts.pm_replacements;
                assert!(
                    om_pm >= prev,
                    "seed {seed}: om+pm dropped from {prev} to {om_pm} at h={h}"
                );
                prev = om_pm;
            }
        }
    }

    #[test]
    fn fresh_paths_after_replacement() {
        // Degradation-only failures: CM fires at the first passage over 0.3,
        // and after service the unit restarts from a fresh path.
        let fleet = FleetModel {
            driver: WeibullModel::new(500.0, 1e6).unwrap(),
            ..case_fleet()
        };
        let policy = Policy::new(100_000.0, 0.0).unwrap();
        let o = SimOptions {
            horizon_days: 6000.0,
            record_interval_days: 10.0,
            durations: ServiceDurations::default(),
            log_events: true,
        };
        let out = run(&policy, &fleet, 1, &o, 21, &[2]).unwrap();
        let cm = out
            .event_log
            .iter()
            .find(|e| e.kind == EventKind::CmDegradation)
            .expect("degradation failure expected");
        assert!(out.counts.cm_replacements >= 1);
        let k_at = out.event_days.iter().position(|&t| t == cm.t_days).unwrap();
        // Dark during service, fresh shortly after.
        assert_eq!(out.states[k_at][0], 1.0);
        let end_t = cm.t_days + 3.0;
        let k_after = out
            .event_days
            .iter()
            .position(|&t| t >= end_t + 10.0)
            .unwrap();
        assert!(out.states[k_after][0] < 0.3);
    }

    #[test]
    fn event_vector_minimum() {
        let ev = EventVector {
            pm: 100.0,
            cm_driver: 80.0,
            cm_degradation: f64::INFINITY,
            service_end: f64::INFINITY,
            record: 90.0,
        };
        assert_eq!(ev.min_time(), 80.0);
    }
}
