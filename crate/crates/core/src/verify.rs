//! Registry of named checks.
//!
//! Each [`CheckId`] binds one theorem, congruence, identity or decomposition
//! to an executable assertion over a parameter range that scales with the
//! truncation order `N`. Expensive enumeration oracles are capped separately
//! through [`CheckConfig`]. Tables and series come from the other modules via
//! a lazily populated [`Workbench`].

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Mutex, OnceLock};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::combinatorics::{
    count_p2, count_p24, count_pd, count_pd2, designated_partitions, partitions, pd_counts,
    vector_pairs,
};
use crate::cranks::{
    length_diff_table, length_diff_table_from_parts, mod_class, ordinary_crank, pd_crank_oracle,
    residue_difference_series, zero_one_difference, CrankTable, LengthDiffTable, Statistic,
};
use crate::error::{Error, Result};
use crate::moments::{gfun1_series, gfun2_series, h_series, moment_prefactor, mu_weighted};
use crate::omega::{verify_injection, OMEGA_MIN_WEIGHT};
use crate::products::{
    eta_quotient, jacobi_triple, named, pochhammer, repeated_parts_product, theta_f, theta_psi,
    EtaQuotientSpec, IdentityId,
};
use crate::qseries::TruncSeries;

#[allow(clippy::upper_case_acronyms)]
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CheckId {
    T24,
    T25,
    C3,
    T31,
    T41,
    UNI,
    EQN,
    GF,
    I1,
    I2,
    I3,
    I4,
    I5,
    I6,
    I7,
    M201,
    MAINF,
    G1G4,
    OMEGA,
    AL,
    JZ,
    JZANG,
}

impl CheckId {
    pub const ALL: [CheckId; 22] = [
        CheckId::T24,
        CheckId::T25,
        CheckId::C3,
        CheckId::T31,
        CheckId::T41,
        CheckId::UNI,
        CheckId::EQN,
        CheckId::GF,
        CheckId::I1,
        CheckId::I2,
        CheckId::I3,
        CheckId::I4,
        CheckId::I5,
        CheckId::I6,
        CheckId::I7,
        CheckId::M201,
        CheckId::MAINF,
        CheckId::G1G4,
        CheckId::OMEGA,
        CheckId::AL,
        CheckId::JZ,
        CheckId::JZANG,
    ];

    pub fn description(self) -> &'static str {
        match self {
            CheckId::T24 => "pd-crank parity classes alternate: M_bd(0,2,n) vs M_bd(1,2,n)",
            CheckId::T25 => "pd-crank classes mod 3: six relations by n mod 6",
            CheckId::C3 => "PD(3n+2) and PD_-2(6n+4) vanish mod 3; trisection at 6n+4",
            CheckId::T31 => "sign of the parity-weighted pd-crank moments",
            CheckId::T41 => "M_bd(m-1,n) >= M_bd(m,n) except (1,1), (1,5), (1,7)",
            CheckId::UNI => "pd-crank rows are unimodal for n not in {1,5,7}",
            CheckId::EQN => "designated partitions and vector pairs are equinumerous",
            CheckId::GF => "enumeration agrees with the generating functions",
            CheckId::I1 => IdentityId::I1.name(),
            CheckId::I2 => IdentityId::I2.name(),
            CheckId::I3 => IdentityId::I3.name(),
            CheckId::I4 => IdentityId::I4.name(),
            CheckId::I5 => IdentityId::I5.name(),
            CheckId::I6 => IdentityId::I6.name(),
            CheckId::I7 => IdentityId::I7.name(),
            CheckId::M201 => "2-crank difference series is 1 - q + q^4 + nonnegative tail",
            CheckId::MAINF => "(1-q+q^4) prod(1+q^{2i}/(1-q^i)) prefix, tail sign, P2/P24 bridge",
            CheckId::G1G4 => "G1..G4 decomposition of (1-q+q^4) prod(...)^2",
            CheckId::OMEGA => "the map Omega is an injection P24(n-1) -> P2(n)",
            CheckId::AL => "ordinary crank parity classes alternate",
            CheckId::JZ => "sign of the parity-weighted ordinary crank moments",
            CheckId::JZANG => "ordinary crank monotonicity for n >= 44",
        }
    }

    fn identity(self) -> Option<IdentityId> {
        Some(match self {
            CheckId::I1 => IdentityId::I1,
            CheckId::I2 => IdentityId::I2,
            CheckId::I3 => IdentityId::I3,
            CheckId::I4 => IdentityId::I4,
            CheckId::I5 => IdentityId::I5,
            CheckId::I6 => IdentityId::I6,
            CheckId::I7 => IdentityId::I7,
            _ => return None,
        })
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for CheckId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CheckId::ALL
            .into_iter()
            .find(|id| id.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownCheck(s.to_string()))
    }
}

/// Caps on the parameter ranges of the costly routes. Each range is
/// `min(N, cap)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckConfig {
    /// Brute-force pd-crank oracle.
    pub oracle_cap: usize,
    /// `PD(n)` by object enumeration.
    pub pd_enum_cap: usize,
    /// `PD_{-2}(n)` by convolution of enumerated counts.
    pub pd2_enum_cap: usize,
    /// Designated partitions vs vector pairs.
    pub equinumerosity_cap: usize,
    /// Ordinary crank by partition enumeration vs the table.
    pub crank_enum_cap: usize,
    /// Length-difference table by the `A(n, l)` route.
    pub parts_route_cap: usize,
    /// Largest moment index in the sign check.
    pub moment_k_max: u32,
    /// Largest moment index in the three-route comparison.
    pub three_route_k_max: u32,
    pub three_route_cap: usize,
    pub h_k_max: usize,
    pub h_part_max: u32,
    pub h_order_cap: usize,
    /// Largest target weight for the Ω and P2/P24 enumeration checks.
    pub omega_cap: usize,
    pub jz_k_max: u32,
    pub jz_cap: usize,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            oracle_cap: 12,
            pd_enum_cap: 30,
            pd2_enum_cap: 20,
            equinumerosity_cap: 30,
            crank_enum_cap: 30,
            parts_route_cap: 60,
            moment_k_max: 8,
            three_route_k_max: 4,
            three_route_cap: 60,
            h_k_max: 3,
            h_part_max: 12,
            h_order_cap: 80,
            omega_cap: 40,
            jz_k_max: 4,
            jz_cap: 60,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    /// Parameters, e.g. `n=5` or `(m,n)=(1,9)`.
    pub at: String,
    /// The offending values.
    pub values: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub id: CheckId,
    pub range: String,
    pub order: usize,
    pub status: Status,
    /// Present exactly when `status` is [`Status::Fail`].
    pub counterexample: Option<Counterexample>,
    pub details: Vec<String>,
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_record(&self) -> ReportRecord {
        ReportRecord {
            id: self.id.to_string(),
            range: self.range.clone(),
            order: self.order,
            status: self.status,
            counterexample: self.counterexample.clone(),
            details: self.details.clone(),
            millis: self.elapsed.as_millis() as u64,
        }
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<6} {:<4} N={} {} ({} ms)",
            self.id,
            self.status,
            self.order,
            self.range,
            self.elapsed.as_millis()
        )?;
        if let Some(c) = &self.counterexample {
            write!(f, " counterexample at {}: {}", c.at, c.values)?;
        }
        Ok(())
    }
}

/// One structured report line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub id: String,
    pub range: String,
    pub order: usize,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub counterexample: Option<Counterexample>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub details: Vec<String>,
    pub millis: u64,
}

/// Lazily built tables shared by every check run at one order.
pub struct Workbench {
    order: usize,
    config: CheckConfig,
    length_diff: OnceLock<LengthDiffTable>,
    crank: OnceLock<CrankTable>,
    k2: OnceLock<CrankTable>,
    pd: OnceLock<CrankTable>,
    repeated: OnceLock<TruncSeries>,
}

impl Workbench {
    pub fn new(order: usize) -> Self {
        Self::with_config(order, CheckConfig::default())
    }

    pub fn with_config(order: usize, config: CheckConfig) -> Self {
        Workbench {
            order,
            config,
            length_diff: OnceLock::new(),
            crank: OnceLock::new(),
            k2: OnceLock::new(),
            pd: OnceLock::new(),
            repeated: OnceLock::new(),
        }
    }

    /// Replaces the pd-crank table, e.g. with a deliberately corrupted one.
    pub fn with_pd_table(self, table: CrankTable) -> Result<Self> {
        if table.order() != self.order {
            return Err(Error::OrderMismatch {
                left: self.order,
                right: table.order(),
            });
        }
        let _ = self.pd.set(table);
        Ok(self)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn config(&self) -> &CheckConfig {
        &self.config
    }

    pub fn length_diff(&self) -> &LengthDiffTable {
        self.length_diff
            .get_or_init(|| length_diff_table(self.order))
    }

    pub fn crank(&self) -> &CrankTable {
        self.crank
            .get_or_init(|| CrankTable::build(Statistic::Crank, self.length_diff()))
    }

    pub fn k2_crank(&self) -> &CrankTable {
        self.k2
            .get_or_init(|| CrankTable::build(Statistic::KCrank(2), self.length_diff()))
    }

    pub fn pd_crank(&self) -> &CrankTable {
        self.pd
            .get_or_init(|| CrankTable::build(Statistic::PdCrank, self.length_diff()))
    }

    /// `∏ (1 + q^{2i}/(1 - q^i))` at the workbench order.
    pub fn repeated_parts(&self) -> &TruncSeries {
        self.repeated
            .get_or_init(|| repeated_parts_product(self.order))
    }

    fn eta(&self, spec: &EtaQuotientSpec) -> Result<TruncSeries> {
        eta_quotient(spec, self.order)
    }

    fn cap(&self, cap: usize) -> usize {
        self.order.min(cap)
    }

    pub fn run(&self, id: CheckId) -> VerificationReport {
        let start = Instant::now();
        let mut probe = Probe::default();
        if let Err(e) = dispatch(self, id, &mut probe) {
            probe.fail("error", e.to_string());
        }
        let status = if probe.failure.is_some() {
            Status::Fail
        } else {
            Status::Pass
        };
        VerificationReport {
            id,
            range: probe.ranges.join("; "),
            order: self.order,
            status,
            counterexample: probe.failure,
            details: probe.details,
            elapsed: start.elapsed(),
        }
    }

    /// Runs `ids` on up to `jobs` threads; reports come back in `ids` order.
    pub fn run_many(&self, ids: &[CheckId], jobs: usize) -> Vec<VerificationReport> {
        let jobs = jobs.clamp(1, ids.len().max(1));
        if jobs == 1 {
            return ids.iter().map(|&id| self.run(id)).collect();
        }
        let next = AtomicUsize::new(0);
        let slots: Mutex<Vec<Option<VerificationReport>>> = Mutex::new(vec![None; ids.len()]);
        std::thread::scope(|scope| {
            for _ in 0..jobs {
                scope.spawn(|| loop {
                    let i = next.fetch_add(1, Ordering::Relaxed);
                    let Some(&id) = ids.get(i) else { break };
                    let report = self.run(id);
                    slots.lock().expect("report slots")[i] = Some(report);
                });
            }
        });
        slots
            .into_inner()
            .expect("report slots")
            .into_iter()
            .map(|r| r.expect("every check ran"))
            .collect()
    }
}

pub fn run_check(id: CheckId, order: usize) -> VerificationReport {
    Workbench::new(order).run(id)
}

pub fn run_all(order: usize) -> Vec<VerificationReport> {
    Workbench::new(order).run_many(&CheckId::ALL, 1)
}

/// Accumulates ranges, notes and the first failure of one check.
#[derive(Default)]
struct Probe {
    ranges: Vec<String>,
    details: Vec<String>,
    failure: Option<Counterexample>,
}

impl Probe {
    fn range(&mut self, r: impl Into<String>) {
        self.ranges.push(r.into());
    }

    fn note(&mut self, d: impl Into<String>) {
        self.details.push(d.into());
    }

    fn fail(&mut self, at: impl Into<String>, values: impl Into<String>) {
        if self.failure.is_none() {
            self.failure = Some(Counterexample {
                at: at.into(),
                values: values.into(),
            });
        }
    }

    fn require(&mut self, ok: bool, at: impl FnOnce() -> String, values: impl FnOnce() -> String) {
        if !ok {
            self.fail(at(), values());
        }
    }

    /// Exact series equality, reporting the first differing coefficient.
    fn same_series(&mut self, what: &str, left: &TruncSeries, right: &TruncSeries) {
        if left.order() != right.order() {
            self.fail(
                what,
                format!("orders {} vs {}", left.order(), right.order()),
            );
            return;
        }
        let diff = left
            .coeffs()
            .iter()
            .zip(right.coeffs())
            .position(|(a, b)| a != b);
        if let Some(n) = diff {
            self.fail(
                format!("{what}: n={n}"),
                format!("{} vs {}", left.coeff(n), right.coeff(n)),
            );
        }
    }

    /// The first `expected.len()` coefficients (clipped to the order).
    fn prefix(&mut self, what: &str, s: &TruncSeries, expected: &[i64]) {
        for (n, &want) in expected.iter().enumerate().take(s.order() + 1) {
            if s.coeff(n) != &BigInt::from(want) {
                self.fail(
                    format!("{what}: n={n}"),
                    format!("{} vs printed {want}", s.coeff(n)),
                );
                return;
            }
        }
    }
}

fn dispatch(wb: &Workbench, id: CheckId, p: &mut Probe) -> Result<()> {
    if let Some(identity) = id.identity() {
        return check_identity(wb, identity, p);
    }
    match id {
        CheckId::T24 => check_t24(wb, p),
        CheckId::T25 => check_t25(wb, p),
        CheckId::C3 => check_c3(wb, p),
        CheckId::T31 => check_t31(wb, p),
        CheckId::T41 => check_t41(wb, p),
        CheckId::UNI => check_uni(wb, p),
        CheckId::EQN => check_eqn(wb, p),
        CheckId::GF => check_gf(wb, p),
        CheckId::M201 => check_m201(wb, p),
        CheckId::MAINF => check_mainf(wb, p),
        CheckId::G1G4 => check_g1g4(wb, p),
        CheckId::OMEGA => check_omega(wb, p),
        CheckId::AL => check_al(wb, p),
        CheckId::JZ => check_jz(wb, p),
        CheckId::JZANG => check_jzang(wb, p),
        _ => unreachable!("identity checks handled above"),
    }
}

fn check_identity(wb: &Workbench, id: IdentityId, p: &mut Probe) -> Result<()> {
    p.range(format!("0<=n<={}", wb.order));
    let sides = id.sides(wb.order)?;
    p.same_series(id.name(), &sides.left, &sides.right);
    Ok(())
}

/// Parity classes of a crank table alternate in sign of their difference.
fn parity_alternation(table: &CrankTable, label: &str, p: &mut Probe) -> Result<()> {
    for n in 0..=table.order() {
        let even = mod_class(table, 0, 2, n)?;
        let odd = mod_class(table, 1, 2, n)?;
        let ok = if n % 2 == 0 { even > odd } else { odd > even };
        p.require(
            ok,
            || format!("n={n}"),
            || format!("{label}(0,2,n)={even}, {label}(1,2,n)={odd}"),
        );
    }
    Ok(())
}

fn check_t24(wb: &Workbench, p: &mut Probe) -> Result<()> {
    let n = wb.order;
    p.range(format!("0<=n<={n}"));
    let pd = wb.pd_crank();
    parity_alternation(pd, "M_bd", p)?;
    let resid = residue_difference_series(pd, 2)?;
    p.same_series(
        "z=-1 series vs f6^2 f1^2/(f2^4 f3^2)",
        &resid,
        &wb.eta(&named::pd_residue2())?,
    );
    // f6^2/f2^4 times the 2-dissection of f1^2/f3^2
    let dissected = wb
        .eta(&EtaQuotientSpec::new().f(6, 2).f(2, -4))?
        .mul(&IdentityId::I2.sides(n)?.right)?;
    p.same_series("z=-1 series via 2-dissection", &resid, &dissected);
    Ok(())
}

fn check_t25(wb: &Workbench, p: &mut Probe) -> Result<()> {
    let order = wb.order;
    p.range(format!("0<=n<={order}"));
    let pd = wb.pd_crank();
    for n in 0..=order {
        let c: Vec<BigInt> = (0..3)
            .map(|k| mod_class(pd, k, 3, n))
            .collect::<Result<_>>()?;
        let ok = match n % 6 {
            0 | 2 | 3 => c[0] > c[1],
            1 | 5 => c[0] < c[1],
            _ => c[0] == c[1] && c[1] == c[2],
        };
        p.require(
            ok,
            || format!("n={n} (n mod 6 = {})", n % 6),
            || format!("M_bd(k,3,n) = {}, {}, {}", c[0], c[1], c[2]),
        );
    }

    let resid = residue_difference_series(pd, 3)?;
    p.same_series(
        "z=zeta series vs f1 f6^2/(f2^2 f3^3)",
        &resid,
        &wb.eta(&named::pd_residue3())?,
    );
    let via_dissection = wb
        .eta(&EtaQuotientSpec::new().f(6, 2).f(2, -2))?
        .mul(&IdentityId::I3.sides(order)?.right)?;
    p.same_series("z=zeta series via 2-dissection", &resid, &via_dissection);

    // even half
    let even = resid.dissect(2, 0)?;
    let eo = even.order();
    let f6_f3 = eta_quotient(&EtaQuotientSpec::new().f(6, 2).f(3, -5), eo)?;
    p.same_series(
        "even part",
        &even,
        &eta_quotient(&named::pd_residue3_even(), eo)?,
    );
    p.same_series("even part via psi", &even, &f6_f3.mul(&theta_psi(eo))?);
    let split = theta_f(3, 6, 1, 1, eo)?.add(&theta_psi(eo).substitute_power(9).shift(1))?;
    p.same_series("even part via psi split", &even, &f6_f3.mul(&split)?);
    for (n, c) in even.coeffs().iter().enumerate() {
        let ok = match n % 3 {
            2 => c.is_zero(),
            _ => c.is_positive(),
        };
        p.require(
            ok,
            || format!("even part: n={n}"),
            || format!("coefficient {c}"),
        );
    }

    // odd half, negated
    if order >= 1 {
        let odd = resid.dissect(2, 1)?.neg();
        let oo = odd.order();
        p.same_series(
            "odd part",
            &odd,
            &eta_quotient(&named::pd_residue3_odd(), oo)?,
        );
        let f6_f3 = eta_quotient(&EtaQuotientSpec::new().f(6, 6).f(3, -7), oo)?;
        p.same_series(
            "odd part via 1/psi",
            &odd,
            &f6_f3.mul(&theta_psi(oo).invert()?)?,
        );
        let cubic = f6_f3.mul(&IdentityId::I5.sides(oo)?.right)?;
        p.same_series("odd part via psi(q^3), psi(q^9)", &odd, &cubic);
        for (n, c) in odd.coeffs().iter().enumerate() {
            let ok = match n % 3 {
                1 => c.is_negative(),
                _ => c.is_positive(),
            };
            p.require(
                ok,
                || format!("odd part: n={n}"),
                || format!("coefficient {c}"),
            );
        }
    }
    Ok(())
}

fn check_c3(wb: &Workbench, p: &mut Probe) -> Result<()> {
    let order = wb.order;
    p.range(format!("3n+2<={order}; 6n+4<={order}"));
    let three = BigInt::from(3);
    let pd = wb.eta(&named::pd())?;
    for n in (2..=order).step_by(3) {
        p.require(
            (pd.coeff(n) % &three).is_zero(),
            || format!("PD at n={n}"),
            || pd.coeff(n).to_string(),
        );
    }
    let pd2 = wb.eta(&named::pd2())?;
    let table = wb.pd_crank();
    for n in (4..=order).step_by(6) {
        p.require(
            (pd2.coeff(n) % &three).is_zero(),
            || format!("PD_-2 at n={n}"),
            || pd2.coeff(n).to_string(),
        );
        let c: Vec<BigInt> = (0..3)
            .map(|k| mod_class(table, k, 3, n))
            .collect::<Result<_>>()?;
        p.require(
            c[0] == c[1] && c[1] == c[2] && &(&c[0] * &three) == pd2.coeff(n),
            || format!("trisection at n={n}"),
            || format!("{} / {} / {} of {}", c[0], c[1], c[2], pd2.coeff(n)),
        );
    }
    Ok(())
}

/// Strictly increasing tuples of `1..=max_part` with at most `max_len` entries.
fn increasing_tuples(max_part: u32, max_len: usize) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for t in &frontier {
            let start = t.last().map_or(1, |&x| x + 1);
            for x in start..=max_part {
                let mut u: Vec<u32> = t.clone();
                u.push(x);
                next.push(u);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

fn check_t31(wb: &Workbench, p: &mut Probe) -> Result<()> {
    let cfg = wb.config();
    let order = wb.order;
    let pd = wb.pd_crank();
    p.range(format!("0<=k<={}, k<=n<={order}", cfg.moment_k_max));
    for k in 0..=cfg.moment_k_max {
        for n in (k as usize)..=order {
            let mu = mu_weighted(k, n, pd)?;
            let signed = if n % 2 == 0 { mu.clone() } else { -mu.clone() };
            p.require(
                signed.is_positive(),
                || format!("(k,n)=({k},{n})"),
                || format!("mu_2k,bd(-1,n)={mu}"),
            );
        }
    }

    let resid = residue_difference_series(pd, 2)?;
    for n in 0..=order {
        let mu = mu_weighted(0, n, pd)?;
        p.require(
            &mu == resid.coeff(n),
            || format!("k=0 reduction at n={n}"),
            || format!("{mu} vs {}", resid.coeff(n)),
        );
    }

    let cap = wb.cap(cfg.three_route_cap);
    p.range(format!(
        "three routes: k<={}, n<={cap}",
        cfg.three_route_k_max
    ));
    for k in 0..=cfg.three_route_k_max {
        let definition = TruncSeries::from_coeffs(
            cap,
            (0..=cap)
                .map(|n| mu_weighted(k, n, pd))
                .collect::<Result<Vec<_>>>()?,
        );
        p.same_series(&format!("gfun-1 k={k}"), &definition, &gfun1_series(k, cap));
        p.same_series(&format!("gfun-2 k={k}"), &definition, &gfun2_series(k, cap));
    }

    // prefactor at -q through the triple product
    let alt = moment_prefactor(order).negate_q();
    let (_, jtp) = jacobi_triple(1, 3, order)?;
    let denominator = wb.eta(
        &EtaQuotientSpec::new()
            .f(2, 1)
            .f(6, 2)
            .factor(4, 12, 1, false)
            .factor(6, 12, 1, false)
            .factor(8, 12, 1, false),
    )?;
    let via_jtp = jtp
        .mul(&pochhammer(1, 2, true, order)?)?
        .mul(&denominator.invert()?)?;
    p.same_series("prefactor at -q via triple product", &alt, &via_jtp);

    let h_order = wb.cap(cfg.h_order_cap);
    let tuples = increasing_tuples(cfg.h_part_max, cfg.h_k_max);
    p.range(format!(
        "h: {} tuples, parts<={}, len<={}, order {h_order}",
        tuples.len(),
        cfg.h_part_max,
        cfg.h_k_max
    ));
    for t in &tuples {
        let h = h_series(t, h_order)?;
        p.require(
            h.coeff(0).is_one(),
            || format!("h{t:?} constant term"),
            || h.coeff(0).to_string(),
        );
        if let Some(n) = h.negative_indices().first() {
            p.fail(format!("h{t:?} at n={n}"), h.coeff(*n).to_string());
        }
    }
    Ok(())
}

/// Violations of `T(m-1, n) >= T(m, n)` for `1 <= m <= n`, with margins.
fn monotonicity_violations(t: &CrankTable) -> Vec<(i64, usize, BigInt)> {
    let mut out = Vec::new();
    for n in 0..=t.order() {
        for m in 1..=n as i64 {
            let margin = t.get(m - 1, n) - t.get(m, n);
            if margin.is_negative() {
                out.push((m, n, margin));
            }
        }
    }
    out
}

const T41_EXCEPTIONS: [(i64, usize); 3] = [(1, 1), (1, 5), (1, 7)];

fn check_t41(wb: &Workbench, p: &mut Probe) -> Result<()> {
    let order = wb.order;
    p.range(format!("1<=m<=n<={order}"));
    let pd = wb.pd_crank();
    let found = monotonicity_violations(pd);
    let expected: Vec<(i64, usize)> = T41_EXCEPTIONS
        .iter()
        .copied()
        .filter(|&(_, n)| n <= order)
        .collect();
    for (m, n, margin) in &found {
        p.note(format!(
            "exception (m,n)=({m},{n}): M_bd(m-1,n)-M_bd(m,n)={margin}"
        ));
    }
    let located: Vec<(i64, usize)> = found.iter().map(|&(m, n, _)| (m, n)).collect();
    if located != expected {
        let extra = located.iter().find(|x| !expected.contains(x));
        let missing = expected.iter().find(|x| !located.contains(x));
        match (extra, missing) {
            (Some(&(m, n)), _) => p.fail(
                format!("(m,n)=({m},{n})"),
                format!(
                    "M_bd({},{n})={} < M_bd({m},{n})={}",
                    m - 1,
                    pd.get(m - 1, n),
                    pd.get(m, n)
                ),
            ),
            (None, Some(&(m, n))) => p.fail(
                format!("(m,n)=({m},{n})"),
                "expected exception did not occur".to_string(),
            ),
            (None, None) => p.fail("exception set", format!("{located:?}")),
        }
    }

    // m = 1 difference from the 2-crank
    let k2 = wb.k2_crank();
    let pd_diff = zero_one_difference(pd);
    let k2_diff = zero_one_difference(k2);
    let square = wb.repeated_parts().mul(wb.repeated_parts())?;
    p.same_series(
        "m=1 difference via 2-crank",
        &pd_diff,
        &square.mul(&k2_diff)?,
    );

    let k2_violations = monotonicity_violations(k2);
    if let Some((m, n, margin)) = k2_violations.iter().find(|(m, _, _)| *m >= 2) {
        p.fail(
            format!("2-crank at (m,n)=({m},{n})"),
            format!("M_2(m-1,n)-M_2(m,n)={margin}"),
        );
    }
    Ok(())
}

fn is_unimodal_at_zero(t: &CrankTable, n: usize) -> bool {
    let row = t.row(n);
    row[..=n].windows(2).all(|w| w[0] <= w[1]) && row[n..].windows(2).all(|w| w[0] >= w[1])
}

fn check_uni(wb: &Workbench, p: &mut Probe) -> Result<()> {
    let order = wb.order;
    p.range(format!("0<=n<={order}, n not in {{1,5,7}}"));
    let pd = wb.pd_crank();
    for n in 0..=order {
        let unimodal = is_unimodal_at_zero(pd, n);
        if matches!(n, 1 | 5 | 7) {
            p.note(format!("row n={n} unimodal: {unimodal}"));
            continue;
        }
        p.require(
            unimodal,
            || format!("n={n}"),
            || {
                format!(
                    "row {:?}",
                    pd.row(n)
                        .iter()
                        .map(ToString::to_string)
                        .collect::<Vec<_>>()
                )
            },
        );
    }
    Ok(())
}

fn check_eqn(wb: &Workbench, p: &mut Probe) -> Result<()> {
    let cap = wb.cap(wb.config().equinumerosity_cap);
    p.range(format!("0<=n<={cap}"));
    for n in 0..=cap as u32 {
        let designated = designated_partitions(n).count();
        let pairs = vector_pairs(n).count();
        p.require(
            designated == pairs,
            || format!("n={n}"),
            || format!("{designated} designated partitions vs {pairs} vector pairs"),
        );
    }
    Ok(())
}

fn check_gf(wb: &Workbench, p: &mut Probe) -> Result<()> {
    let cfg = wb.config();
    let order = wb.order;
    let pd = wb.eta(&named::pd())?;
    let pd2 = wb.eta(&named::pd2())?;

    let cap = wb.cap(cfg.pd_enum_cap);
    p.range(format!("PD enumeration n<={cap}"));
    for n in 0..=cap {
        let count = BigInt::from(count_pd(n as u32));
        p.require(
            &count == pd.coeff(n),
            || format!("PD at n={n}"),
            || format!("enumerated {count}, series {}", pd.coeff(n)),
        );
    }
    p.range(format!("PD multiplicity recursion n<={order}"));
    let dp = pd_counts(order);
    for (n, c) in dp.iter().enumerate() {
        let c = BigInt::from(c.clone());
        p.require(
            &c == pd.coeff(n),
            || format!("PD recursion at n={n}"),
            || format!("{c} vs series {}", pd.coeff(n)),
        );
    }

    let cap = wb.cap(cfg.pd2_enum_cap);
    p.range(format!("PD_-2 enumeration n<={cap}"));
    for n in 0..=cap {
        let count = BigInt::from(count_pd2(n as u32));
        p.require(
            &count == pd2.coeff(n),
            || format!("PD_-2 at n={n}"),
            || format!("enumerated {count}, series {}", pd2.coeff(n)),
        );
    }

    let table = wb.pd_crank();
    p.same_series("M_bd row sums vs PD_-2 series", &table.row_sums(), &pd2);

    let cap = wb.cap(cfg.oracle_cap);
    p.range(format!("M_bd oracle n<={cap}"));
    let oracle = pd_crank_oracle(cap);
    for (m, n, c) in oracle.entries() {
        p.require(
            c == table.get(m, n),
            || format!("M_bd at (m,n)=({m},{n})"),
            || format!("oracle {c}, series {}", table.get(m, n)),
        );
    }

    let cap = wb.cap(cfg.parts_route_cap);
    p.range(format!("D by parts recurrence n<={cap}"));
    let by_parts = length_diff_table_from_parts(cap);
    let d = wb.length_diff();
    for n in 0..=cap {
        if by_parts.row(n) != d.row(n) {
            p.fail(format!("D row n={n}"), "routes differ".to_string());
        }
    }

    let cap = wb.cap(cfg.crank_enum_cap);
    p.range(format!("ordinary crank enumeration 2<=n<={cap}"));
    let crank = wb.crank();
    for n in 2..=cap as u32 {
        let mut row = vec![BigInt::zero(); 2 * n as usize + 1];
        for part in partitions(n) {
            let c = ordinary_crank(&part)?;
            row[(c + n as i64) as usize] += 1;
        }
        p.require(
            row.as_slice() == crank.row(n as usize),
            || format!("M row n={n}"),
            || "enumerated crank counts differ from the table".to_string(),
        );
    }
    p.same_series(
        "crank row sums vs 1/f1",
        &crank.row_sums(),
        &wb.eta(&EtaQuotientSpec::new().f(1, -1))?,
    );
    let k1 = CrankTable::build(Statistic::KCrank(1), d);
    p.require(
        k1.rows() == crank.rows(),
        || "k=1 crank table".to_string(),
        || "differs from the ordinary crank table".to_string(),
    );
    Ok(())
}

fn check_m201(wb: &Workbench, p: &mut Probe) -> Result<()> {
    let order = wb.order;
    p.range(format!("0<=n<={order}"));
    let diff = zero_one_difference(wb.k2_crank());
    p.prefix("1-q+q^4 prefix", &diff, &[1, -1, 0, 0, 1, 0]);
    for n in 6..=order {
        p.require(
            !diff.coeff(n).is_negative(),
            || format!("c_n at n={n}"),
            || diff.coeff(n).to_string(),
        );
    }
    Ok(())
}

fn mainf2_series(wb: &Workbench) -> Result<TruncSeries> {
    TruncSeries::from_terms(wb.order, [(0, 1), (1, -1), (4, 1)]).mul(wb.repeated_parts())
}

const MAINF2_PREFIX: [i64; 13] = [1, -1, 1, 0, 2, -1, 4, -1, 6, 0, 8, 0, 15];

fn check_mainf(wb: &Workbench, p: &mut Probe) -> Result<()> {
    let order = wb.order;
    p.range(format!("0<=n<={order}"));
    let series = mainf2_series(wb)?;
    p.prefix("printed prefix", &series, &MAINF2_PREFIX);
    for n in 14..=order {
        p.require(
            !series.coeff(n).is_negative(),
            || format!("a_n at n={n}"),
            || series.coeff(n).to_string(),
        );
    }

    // F - q(1 + q^2 + q^4) ∏_{i>=2}: drop the i = 1 factor (1 - q + q^2)/(1 - q)
    let f = wb.repeated_parts();
    let mut tail = f.mul(&TruncSeries::from_terms(order, [(0, 1), (1, -1)]))?;
    tail = tail.mul(&TruncSeries::from_terms(order, [(0, 1), (1, -1), (2, 1)]).invert()?)?;
    let second = f.sub(
        &tail
            .mul(&TruncSeries::from_terms(order, [(0, 1), (2, 1), (4, 1)]))?
            .shift(1),
    )?;
    p.same_series("first-factor rewrite", &series, &second);

    let cap = wb.cap(wb.config().omega_cap);
    p.range(format!("P2(n)-P24(n-1) for 1<=n<={cap}"));
    p.require(
        series.coeff(0).is_one(),
        || "n=0".to_string(),
        || series.coeff(0).to_string(),
    );
    for n in 1..=cap as u32 {
        let count = count_p2(n) as i64 - count_p24(n - 1) as i64;
        p.require(
            series.coeff(n as usize) == &BigInt::from(count),
            || format!("n={n}"),
            || {
                format!(
                    "series {}, P2(n)-P24(n-1) = {count}",
                    series.coeff(n as usize)
                )
            },
        );
    }
    Ok(())
}

fn check_g1g4(wb: &Workbench, p: &mut Probe) -> Result<()> {
    let order = wb.order;
    p.range(format!("0<=n<={order}"));
    let f = wb.repeated_parts();
    let mainf2 = mainf2_series(wb)?;
    let mono = |terms: &[(usize, i64)]| TruncSeries::from_terms(order, terms.iter().copied());

    let outer = mono(&[(0, 1), (4, 1), (6, 1)]);
    let g1 = outer.mul(&mono(&[(1, -1), (5, -1), (7, -1)]))?;
    p.same_series(
        "G1 expansion",
        &g1,
        &mono(&[(1, -1), (5, -2), (7, -2), (9, -1), (11, -2), (13, -1)]),
    );
    let positive = mainf2.add(&mono(&[(1, 1), (5, 1), (7, 1)]))?;
    let g2 = outer.mul(&positive)?;
    let g3 = f.shift(2);
    p.prefix(
        "G3 prefix",
        &g3,
        &[0, 0, 1, 0, 1, 1, 2, 1, 4, 2, 6, 5, 9, 7],
    );
    let remainder = mainf2
        .sub(&outer.mul(&mono(&[(0, 1), (1, -1), (4, 1)]))?)?
        .sub(&mono(&[(2, 1)]))?;
    p.prefix(
        "3q^6+5q^8+7q^10+15q^12 head",
        &remainder,
        &[0, 0, 0, 0, 0, 0, 3, 0, 5, 0, 7, 0, 15, 0],
    );
    let g4 = remainder.mul(f)?;
    p.prefix(
        "G1+G3 prefix",
        &g1.add(&g3)?,
        &[0, -1, 1, 0, 1, -1, 2, -1, 4, 1, 6, 3, 9, 6],
    );

    let target = mono(&[(0, 1), (1, -1), (4, 1)]).mul(&f.mul(f)?)?;
    let sum = g1.add(&g2)?.add(&g3)?.add(&g4)?;
    p.same_series("G1+G2+G3+G4 reassembly", &sum, &target);

    let g24 = g2.add(&g4)?;
    for n in [1usize, 5, 7] {
        if let Some(c) = g24.get(n) {
            p.require(c.is_zero(), || format!("G2+G4 at n={n}"), || c.to_string());
        }
    }
    for (name, g) in [("G2", &g2), ("G3", &g3), ("G4", &g4)] {
        if let Some(n) = g.negative_indices().first() {
            p.fail(format!("{name} at n={n}"), g.coeff(*n).to_string());
        }
    }
    let negative = target.negative_indices();
    let expected: Vec<usize> = [1, 5, 7].into_iter().filter(|&n| n <= order).collect();
    p.require(
        negative == expected,
        || "negative coefficients of (1-q+q^4) prod(...)^2".to_string(),
        || format!("found at {negative:?}"),
    );
    Ok(())
}

fn check_omega(wb: &Workbench, p: &mut Probe) -> Result<()> {
    let cap = wb.cap(wb.config().omega_cap) as u32;
    p.range(format!("{OMEGA_MIN_WEIGHT}<=n<={cap}"));
    let mainf2 = mainf2_series(wb)?;
    for n in OMEGA_MIN_WEIGHT..=cap {
        let report = verify_injection(n)?;
        if let Some(first) = report.failures.first() {
            p.fail(format!("n={n}"), first.clone());
        }
        let surplus = BigInt::from(report.surplus());
        p.require(
            !surplus.is_negative() && &surplus == mainf2.coeff(n as usize),
            || format!("a_n at n={n}"),
            || {
                format!(
                    "P2(n)-P24(n-1)={surplus}, series {}",
                    mainf2.coeff(n as usize)
                )
            },
        );
    }
    Ok(())
}

fn check_al(wb: &Workbench, p: &mut Probe) -> Result<()> {
    p.range(format!("0<=n<={}", wb.order));
    let crank = wb.crank();
    parity_alternation(crank, "M", p)?;
    let resid = residue_difference_series(crank, 2)?;
    p.same_series(
        "C(-1,q) vs f1/(-q;q)^2",
        &resid,
        &wb.eta(&named::crank_residue2())?,
    );
    Ok(())
}

fn check_jz(wb: &Workbench, p: &mut Probe) -> Result<()> {
    let cfg = wb.config();
    let cap = wb.cap(cfg.jz_cap);
    p.range(format!("0<=k<={}, k<=n<={cap}", cfg.jz_k_max));
    let crank = wb.crank();
    for k in 0..=cfg.jz_k_max {
        for n in (k as usize)..=cap {
            let mu = mu_weighted(k, n, crank)?;
            let signed = if n % 2 == 0 { mu.clone() } else { -mu.clone() };
            p.require(
                signed.is_positive(),
                || format!("(k,n)=({k},{n})"),
                || format!("mu_2k(-1,n)={mu}"),
            );
        }
    }
    Ok(())
}

fn check_jzang(wb: &Workbench, p: &mut Probe) -> Result<()> {
    let order = wb.order;
    p.range(format!("44<=n<={order}, 1<=m<=n-1"));
    let crank = wb.crank();
    for n in 44..=order {
        for m in 1..n as i64 {
            let (lo, hi) = (crank.get(m - 1, n), crank.get(m, n));
            p.require(
                lo >= hi,
                || format!("(m,n)=({m},{n})"),
                || format!("M(m-1,n)={lo} < M(m,n)={hi}"),
            );
        }
    }
    Ok(())
}
