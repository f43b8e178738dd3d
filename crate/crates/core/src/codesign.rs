//! Hardware/software partitioning under an FPGA area budget.
//!
//! Each primitive runs either in software (no area) or as an accelerator
//! with a LUT/FF/DSP/BRAM footprint. Latencies and areas add up across
//! primitives; the optimizer picks the assignment with the lowest total
//! latency whose summed area fits the device component-wise.
//!
//! Ties on latency go to the smaller LUT total, then to the assignment
//! that prefers the earlier-ranked candidate (software first) for the
//! lexicographically smallest primitive name.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::Add;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest number of primitives the optimizer accepts.
pub const MAX_PRIMITIVES: usize = 20;
/// Largest number of complete assignments enumerated.
pub const MAX_ASSIGNMENTS: u64 = 1 << 24;

const LATENCY_EPS: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum CodesignError {
    #[error(
        "no assignment fits the {budget} budget (primitive without a feasible option: {primitive})"
    )]
    Infeasible { budget: String, primitive: String },
    #[error("{0} primitives exceed the limit of {MAX_PRIMITIVES}")]
    TooManyPrimitives(usize),
    #[error("{0} assignments exceed the enumeration limit")]
    TooManyAssignments(u64),
    #[error("software candidate for {0} declares a non-zero area")]
    SoftwareWithArea(String),
    #[error("candidate for {primitive} has non-positive latency {latency_ms}")]
    BadLatency { primitive: String, latency_ms: f64 },
    #[error("no candidates given")]
    Empty,
    #[error("unknown budget {0:?}")]
    UnknownBudget(String),
    #[error("speedup needs positive latencies, got {reference} and {candidate}")]
    NonPositiveSpeedup { reference: f64, candidate: f64 },
    #[error("fixture {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("fixture: {0}")]
    Json(#[from] serde_json::Error),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AreaVector {
    pub lut: u64,
    pub ff: u64,
    pub dsp: u64,
    pub bram: u64,
}

impl Add for AreaVector {
    type Output = Self;

    fn add(self, o: Self) -> Self {
        Self {
            lut: self.lut.saturating_add(o.lut),
            ff: self.ff.saturating_add(o.ff),
            dsp: self.dsp.saturating_add(o.dsp),
            bram: self.bram.saturating_add(o.bram),
        }
    }
}

impl AreaVector {
    pub const ZERO: Self = Self {
        lut: 0,
        ff: 0,
        dsp: 0,
        bram: 0,
    };

    pub fn new(lut: u64, ff: u64, dsp: u64, bram: u64) -> Self {
        Self { lut, ff, dsp, bram }
    }

    pub fn is_zero(&self) -> bool {
        *self == Self::ZERO
    }

    fn components(&self) -> [(&'static str, u64); 4] {
        [
            ("LUT", self.lut),
            ("FF", self.ff),
            ("DSP", self.dsp),
            ("BRAM", self.bram),
        ]
    }

    pub fn fits_within(&self, capacity: &Self) -> bool {
        self.first_excess(capacity).is_none()
    }

    /// The first resource (LUT, FF, DSP, BRAM order) that overflows.
    pub fn first_excess(&self, capacity: &Self) -> Option<ResourceExcess> {
        self.components()
            .into_iter()
            .zip(capacity.components())
            .find(|((_, used), (_, avail))| used > avail)
            .map(|((resource, used), (_, available))| ResourceExcess {
                resource,
                used,
                available,
            })
    }
}

impl fmt::Display for AreaVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "LUT {} / FF {} / DSP {} / BRAM {}",
            self.lut, self.ff, self.dsp, self.bram
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResourceExcess {
    pub resource: &'static str,
    pub used: u64,
    pub available: u64,
}

impl fmt::Display for ResourceExcess {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} > {}", self.resource, self.used, self.available)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Place {
    SW,
    HW,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ImplCandidate {
    pub primitive: String,
    pub place: Place,
    pub latency_ms: f64,
    #[serde(default)]
    pub area: AreaVector,
}

impl ImplCandidate {
    pub fn software(primitive: &str, latency_ms: f64) -> Self {
        Self {
            primitive: primitive.to_string(),
            place: Place::SW,
            latency_ms,
            area: AreaVector::ZERO,
        }
    }

    pub fn hardware(primitive: &str, latency_ms: f64, area: AreaVector) -> Self {
        Self {
            primitive: primitive.to_string(),
            place: Place::HW,
            latency_ms,
            area,
        }
    }

    /// Preference order within one primitive: software first, then faster,
    /// then smaller.
    fn rank_cmp(&self, other: &Self) -> Ordering {
        self.place
            .cmp(&other.place)
            .then(self.latency_ms.total_cmp(&other.latency_ms))
            .then(self.area.lut.cmp(&other.area.lut))
            .then(self.area.ff.cmp(&other.area.ff))
            .then(self.area.dsp.cmp(&other.area.dsp))
            .then(self.area.bram.cmp(&other.area.bram))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeviceBudget {
    pub name: String,
    pub capacity: AreaVector,
}

impl DeviceBudget {
    pub fn new(name: &str, capacity: AreaVector) -> Self {
        Self {
            name: name.to_string(),
            capacity,
        }
    }

    /// A device with no programmable logic.
    pub fn zero() -> Self {
        Self::new("none", AreaVector::ZERO)
    }

    pub fn unbounded() -> Self {
        Self::new(
            "unbounded",
            AreaVector::new(u64::MAX, u64::MAX, u64::MAX, u64::MAX),
        )
    }
}

/// One candidate per primitive, with summed latency and area.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Partition {
    pub budget: String,
    pub assignment: BTreeMap<String, ImplCandidate>,
    pub total_latency_ms: f64,
    pub total_area: AreaVector,
}

impl Partition {
    fn from_choices(budget: &str, chosen: &[&ImplCandidate]) -> Self {
        let mut total_latency_ms = 0.0;
        let mut total_area = AreaVector::ZERO;
        let mut assignment = BTreeMap::new();
        for c in chosen {
            total_latency_ms += c.latency_ms;
            total_area = total_area + c.area;
            assignment.insert(c.primitive.clone(), (*c).clone());
        }
        Self {
            budget: budget.to_string(),
            assignment,
            total_latency_ms,
            total_area,
        }
    }

    pub fn place_of(&self, primitive: &str) -> Option<Place> {
        self.assignment.get(primitive).map(|c| c.place)
    }

    /// Primitives mapped to hardware, in name order.
    pub fn hardware(&self) -> Vec<&str> {
        self.assignment
            .values()
            .filter(|c| c.place == Place::HW)
            .map(|c| c.primitive.as_str())
            .collect()
    }
}

/// Search procedure for [`optimize_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    #[default]
    Exhaustive,
    BranchAndBound,
    /// Start from software and add accelerators by latency saved, then by
    /// LUT cost. Not guaranteed optimal; kept for comparison.
    Greedy,
}

/// Candidates grouped per primitive, primitives in name order, each group
/// sorted by preference.
struct Problem<'a> {
    groups: Vec<Vec<&'a ImplCandidate>>,
}

impl<'a> Problem<'a> {
    fn new(candidates: &'a [ImplCandidate]) -> Result<Self, CodesignError> {
        if candidates.is_empty() {
            return Err(CodesignError::Empty);
        }
        let mut by_name: BTreeMap<&str, Vec<&ImplCandidate>> = BTreeMap::new();
        for c in candidates {
            if !(c.latency_ms > 0.0 && c.latency_ms.is_finite()) {
                return Err(CodesignError::BadLatency {
                    primitive: c.primitive.clone(),
                    latency_ms: c.latency_ms,
                });
            }
            if c.place == Place::SW && !c.area.is_zero() {
                return Err(CodesignError::SoftwareWithArea(c.primitive.clone()));
            }
            by_name.entry(&c.primitive).or_default().push(c);
        }
        if by_name.len() > MAX_PRIMITIVES {
            return Err(CodesignError::TooManyPrimitives(by_name.len()));
        }
        let mut groups: Vec<Vec<&ImplCandidate>> = by_name.into_values().collect();
        for g in &mut groups {
            g.sort_by(|a, b| a.rank_cmp(b));
        }
        let combos = groups
            .iter()
            .try_fold(1u64, |acc, g| acc.checked_mul(g.len() as u64))
            .unwrap_or(u64::MAX);
        if combos > MAX_ASSIGNMENTS {
            return Err(CodesignError::TooManyAssignments(combos));
        }
        Ok(Self { groups })
    }

    fn infeasible(&self, budget: &DeviceBudget) -> CodesignError {
        let primitive = self
            .groups
            .iter()
            .find(|g| !g.iter().any(|c| c.area.fits_within(&budget.capacity)))
            .or_else(|| self.groups.first())
            .map(|g| g[0].primitive.clone())
            .unwrap_or_default();
        CodesignError::Infeasible {
            budget: budget.name.clone(),
            primitive,
        }
    }

    fn build(&self, budget: &DeviceBudget, choice: &[usize]) -> Partition {
        let chosen: Vec<&ImplCandidate> =
            self.groups.iter().zip(choice).map(|(g, &i)| g[i]).collect();
        Partition::from_choices(&budget.name, &chosen)
    }
}

/// Ordering on complete assignments: latency, then LUTs, then choice indices.
fn better(a: (f64, u64, &[usize]), b: (f64, u64, &[usize])) -> bool {
    if (a.0 - b.0).abs() > LATENCY_EPS {
        return a.0 < b.0;
    }
    if a.1 != b.1 {
        return a.1 < b.1;
    }
    a.2 < b.2
}

fn exhaustive(p: &Problem, budget: &DeviceBudget) -> Option<Vec<usize>> {
    let n = p.groups.len();
    let mut choice = vec![0usize; n];
    let mut best: Option<(f64, u64, Vec<usize>)> = None;
    loop {
        let mut latency = 0.0;
        let mut area = AreaVector::ZERO;
        for (g, &i) in p.groups.iter().zip(&choice) {
            latency += g[i].latency_ms;
            area = area + g[i].area;
        }
        if area.fits_within(&budget.capacity) {
            let replace = match &best {
                None => true,
                Some((bl, blut, bc)) => better((latency, area.lut, &choice), (*bl, *blut, bc)),
            };
            if replace {
                best = Some((latency, area.lut, choice.clone()));
            }
        }
        // mixed-radix increment, last primitive fastest
        let mut k = n;
        loop {
            if k == 0 {
                return best.map(|b| b.2);
            }
            k -= 1;
            choice[k] += 1;
            if choice[k] < p.groups[k].len() {
                break;
            }
            choice[k] = 0;
        }
    }
}

struct Bnb<'p, 'a> {
    p: &'p Problem<'a>,
    capacity: AreaVector,
    /// Minimum achievable latency of primitives `k..`.
    tail_min: Vec<f64>,
    choice: Vec<usize>,
    best: Option<(f64, u64, Vec<usize>)>,
}

impl Bnb<'_, '_> {
    fn search(&mut self, k: usize, latency: f64, area: AreaVector) {
        if let Some((bl, _, _)) = &self.best {
            if latency + self.tail_min[k] > bl + LATENCY_EPS {
                return;
            }
        }
        if k == self.p.groups.len() {
            let replace = match &self.best {
                None => true,
                Some((bl, blut, bc)) => better((latency, area.lut, &self.choice), (*bl, *blut, bc)),
            };
            if replace {
                self.best = Some((latency, area.lut, self.choice.clone()));
            }
            return;
        }
        for i in 0..self.p.groups[k].len() {
            let c = self.p.groups[k][i];
            let next_area = area + c.area;
            if !next_area.fits_within(&self.capacity) {
                continue;
            }
            self.choice[k] = i;
            self.search(k + 1, latency + c.latency_ms, next_area);
        }
    }
}

fn branch_and_bound(p: &Problem, budget: &DeviceBudget) -> Option<Vec<usize>> {
    let n = p.groups.len();
    let mut tail_min = vec![0.0; n + 1];
    for k in (0..n).rev() {
        let m = p.groups[k]
            .iter()
            .map(|c| c.latency_ms)
            .fold(f64::INFINITY, f64::min);
        tail_min[k] = tail_min[k + 1] + m;
    }
    let mut s = Bnb {
        p,
        capacity: budget.capacity,
        tail_min,
        choice: vec![0; n],
        best: None,
    };
    s.search(0, 0.0, AreaVector::ZERO);
    s.best.map(|b| b.2)
}

fn greedy(p: &Problem, budget: &DeviceBudget) -> Option<Vec<usize>> {
    // baseline: fastest software option per primitive
    let mut choice = Vec::with_capacity(p.groups.len());
    for g in &p.groups {
        let sw = g
            .iter()
            .enumerate()
            .filter(|(_, c)| c.place == Place::SW)
            .min_by(|a, b| a.1.latency_ms.total_cmp(&b.1.latency_ms))?;
        choice.push(sw.0);
    }
    let mut upgrades: Vec<(usize, usize, f64, u64)> = Vec::new();
    for (k, g) in p.groups.iter().enumerate() {
        let base = g[choice[k]].latency_ms;
        for (i, c) in g.iter().enumerate() {
            if c.place == Place::HW && c.latency_ms < base {
                upgrades.push((k, i, base - c.latency_ms, c.area.lut));
            }
        }
    }
    upgrades.sort_by(|a, b| b.2.total_cmp(&a.2).then(a.3.cmp(&b.3)));
    let mut upgraded = vec![false; p.groups.len()];
    for (k, i, _, _) in upgrades {
        if upgraded[k] {
            continue;
        }
        let mut trial = choice.clone();
        trial[k] = i;
        let area = p
            .groups
            .iter()
            .zip(&trial)
            .fold(AreaVector::ZERO, |acc, (g, &j)| acc + g[j].area);
        if area.fits_within(&budget.capacity) {
            choice = trial;
            upgraded[k] = true;
        }
    }
    Some(choice)
}

/// Latency-minimal feasible partition by exhaustive enumeration.
pub fn optimize(
    candidates: &[ImplCandidate],
    budget: &DeviceBudget,
) -> Result<Partition, CodesignError> {
    optimize_with(candidates, budget, Strategy::Exhaustive)
}

pub fn optimize_with(
    candidates: &[ImplCandidate],
    budget: &DeviceBudget,
    strategy: Strategy,
) -> Result<Partition, CodesignError> {
    let problem = Problem::new(candidates)?;
    let choice = match strategy {
        Strategy::Exhaustive => exhaustive(&problem, budget),
        Strategy::BranchAndBound => branch_and_bound(&problem, budget),
        Strategy::Greedy => greedy(&problem, budget),
    };
    choice
        .map(|c| problem.build(budget, &c))
        .ok_or_else(|| problem.infeasible(budget))
}

/// `reference / candidate`.
pub fn speedup(reference_ms: f64, candidate_ms: f64) -> Result<f64, CodesignError> {
    if !(reference_ms > 0.0 && candidate_ms > 0.0) {
        return Err(CodesignError::NonPositiveSpeedup {
            reference: reference_ms,
            candidate: candidate_ms,
        });
    }
    Ok(reference_ms / candidate_ms)
}

/// Rounds to the two decimals speedups are reported with.
pub fn round2(x: f64) -> f64 {
    (x * 100.0).round() / 100.0
}

/// One row of the per-stage synthesis history.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StageRow {
    pub stage: String,
    pub primitive: String,
    pub place: Place,
    pub latency_ms: f64,
    #[serde(default)]
    pub area: AreaVector,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub published_speedup: Option<f64>,
}

/// A partition reported alongside the data, used for consistency checks.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PublishedPartition {
    pub design: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<String>,
    pub hardware: Vec<String>,
    pub total_latency_ms: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub total_area: Option<AreaVector>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Fixture {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    #[serde(default)]
    pub candidates: Vec<ImplCandidate>,
    #[serde(default)]
    pub budgets: Vec<DeviceBudget>,
    #[serde(default)]
    pub stages: Vec<StageRow>,
    #[serde(default)]
    pub published: Vec<PublishedPartition>,
}

impl Fixture {
    pub fn from_json(text: &str) -> Result<Self, CodesignError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, CodesignError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| CodesignError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json(&text)
    }

    /// The bundled Zynq-7000 data set.
    pub fn zynq7000() -> Self {
        Self::from_json(include_str!("../fixtures/zynq7000.json")).expect("bundled fixture parses")
    }

    pub fn budget(&self, name: &str) -> Result<&DeviceBudget, CodesignError> {
        self.budgets
            .iter()
            .find(|b| b.name == name)
            .ok_or_else(|| CodesignError::UnknownBudget(name.to_string()))
    }

    /// Total latency with every primitive on its fastest software option.
    pub fn software_total_ms(&self) -> f64 {
        let mut best: BTreeMap<&str, f64> = BTreeMap::new();
        for c in self.candidates.iter().filter(|c| c.place == Place::SW) {
            let e = best.entry(&c.primitive).or_insert(f64::INFINITY);
            *e = e.min(c.latency_ms);
        }
        best.values().sum()
    }

    fn candidate(&self, primitive: &str, place: Place) -> Option<&ImplCandidate> {
        self.candidates
            .iter()
            .filter(|c| c.primitive == primitive && c.place == place)
            .min_by(|a, b| a.latency_ms.total_cmp(&b.latency_ms))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Finding {
    LatencyMismatch {
        design: String,
        published: f64,
        computed: f64,
    },
    AreaMismatch {
        design: String,
        published: AreaVector,
        computed: AreaVector,
    },
    Infeasible {
        design: String,
        budget: String,
        excess: ResourceExcess,
    },
    UnknownBudget {
        design: String,
        budget: String,
    },
    MissingCandidate {
        design: String,
        primitive: String,
        place: Place,
    },
    SpeedupMismatch {
        stage: String,
        primitive: String,
        published: f64,
        computed: f64,
    },
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Finding::LatencyMismatch {
                design,
                published,
                computed,
            } => write!(
                f,
                "{design}: published total {published:.2} ms, sum of parts {computed:.2} ms"
            ),
            Finding::AreaMismatch {
                design,
                published,
                computed,
            } => write!(
                f,
                "{design}: published area {published}, sum of parts {computed}"
            ),
            Finding::Infeasible {
                design,
                budget,
                excess,
            } => {
                write!(f, "{design}: infeasible on {budget}: {excess}")
            }
            Finding::UnknownBudget { design, budget } => {
                write!(f, "{design}: unknown budget {budget}")
            }
            Finding::MissingCandidate {
                design,
                primitive,
                place,
            } => write!(f, "{design}: no {place:?} candidate for {primitive}"),
            Finding::SpeedupMismatch {
                stage,
                primitive,
                published,
                computed,
            } => write!(
                f,
                "{stage} {primitive}: published speedup {published:.2}, computed {computed:.2}"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct FixtureReport {
    pub checked: usize,
    pub findings: Vec<Finding>,
}

impl FixtureReport {
    pub fn is_consistent(&self) -> bool {
        self.findings.is_empty()
    }
}

/// Recomputes every published total from the candidate rows, checks each
/// published partition against its budget, and compares stage speedups.
pub fn verify_fixture(fixture: &Fixture) -> FixtureReport {
    let mut report = FixtureReport::default();
    let primitives: Vec<&str> = {
        let mut v: Vec<&str> = fixture
            .candidates
            .iter()
            .map(|c| c.primitive.as_str())
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    };
    for pubd in &fixture.published {
        report.checked += 1;
        let mut latency = 0.0;
        let mut area = AreaVector::ZERO;
        let mut complete = true;
        for &prim in &primitives {
            let place = if pubd.hardware.iter().any(|h| h == prim) {
                Place::HW
            } else {
                Place::SW
            };
            match fixture.candidate(prim, place) {
                Some(c) => {
                    latency += c.latency_ms;
                    area = area + c.area;
                }
                None => {
                    complete = false;
                    report.findings.push(Finding::MissingCandidate {
                        design: pubd.design.clone(),
                        primitive: prim.to_string(),
                        place,
                    });
                }
            }
        }
        if !complete {
            continue;
        }
        if (latency - pubd.total_latency_ms).abs() > 0.005 {
            report.findings.push(Finding::LatencyMismatch {
                design: pubd.design.clone(),
                published: pubd.total_latency_ms,
                computed: latency,
            });
        }
        if let Some(published) = pubd.total_area {
            if published != area {
                report.findings.push(Finding::AreaMismatch {
                    design: pubd.design.clone(),
                    published,
                    computed: area,
                });
            }
        }
        if let Some(name) = &pubd.budget {
            match fixture.budget(name) {
                Ok(b) => {
                    if let Some(excess) = area.first_excess(&b.capacity) {
                        report.findings.push(Finding::Infeasible {
                            design: pubd.design.clone(),
                            budget: name.clone(),
                            excess,
                        });
                    }
                }
                Err(_) => report.findings.push(Finding::UnknownBudget {
                    design: pubd.design.clone(),
                    budget: name.clone(),
                }),
            }
        }
    }
    for row in &fixture.stages {
        let Some(published) = row.published_speedup else {
            continue;
        };
        report.checked += 1;
        let Some(reference) = fixture.candidate(&row.primitive, Place::SW) else {
            continue;
        };
        if let Ok(computed) = speedup(reference.latency_ms, row.latency_ms) {
            if (computed - published).abs() > 0.01 {
                report.findings.push(Finding::SpeedupMismatch {
                    stage: row.stage.clone(),
                    primitive: row.primitive.clone(),
                    published,
                    computed,
                });
            }
        }
    }
    report
}

/// Optimizer result for one budget, with its speedup over software.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BudgetResult {
    pub partition: Partition,
    pub speedup: f64,
    /// Latency relative to all-software execution.
    pub relative_time: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StageSpeedup {
    pub stage: String,
    pub primitive: String,
    pub latency_ms: f64,
    pub area: AreaVector,
    pub speedup: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CodesignReport {
    pub software_total_ms: f64,
    pub results: Vec<BudgetResult>,
    pub stages: Vec<StageSpeedup>,
}

/// Optimizes every listed budget (plus the zero and unbounded extremes)
/// and tabulates stage speedups.
pub fn report(
    fixture: &Fixture,
    budgets: &[DeviceBudget],
) -> Result<CodesignReport, CodesignError> {
    let software_total_ms = fixture.software_total_ms();
    let mut results = Vec::new();
    for b in budgets {
        let partition = optimize(&fixture.candidates, b)?;
        let s = speedup(software_total_ms, partition.total_latency_ms)?;
        results.push(BudgetResult {
            relative_time: partition.total_latency_ms / software_total_ms,
            speedup: s,
            partition,
        });
    }
    let mut stages = Vec::new();
    for row in &fixture.stages {
        if let Some(reference) = fixture.candidate(&row.primitive, Place::SW) {
            stages.push(StageSpeedup {
                stage: row.stage.clone(),
                primitive: row.primitive.clone(),
                latency_ms: row.latency_ms,
                area: row.area,
                speedup: speedup(reference.latency_ms, row.latency_ms)?,
            });
        }
    }
    Ok(CodesignReport {
        software_total_ms,
        results,
        stages,
    })
}

/// All fixture budgets bracketed by the zero and unbounded devices.
pub fn standard_budgets(fixture: &Fixture) -> Vec<DeviceBudget> {
    let mut v = vec![DeviceBudget::zero()];
    v.extend(fixture.budgets.iter().cloned());
    v.push(DeviceBudget::unbounded());
    v
}

pub fn render_partition(p: &Partition) -> String {
    let mut out = format!("budget: {}\n", p.budget);
    out.push_str(&format!(
        "{:<10} {:<4} {:>12}  {}\n",
        "primitive", "on", "latency[ms]", "area"
    ));
    for c in p.assignment.values() {
        let area = if c.place == Place::SW {
            "-".to_string()
        } else {
            c.area.to_string()
        };
        out.push_str(&format!(
            "{:<10} {:<4} {:>12.2}  {}\n",
            c.primitive,
            format!("{:?}", c.place),
            c.latency_ms,
            area
        ));
    }
    out.push_str(&format!(
        "{:<10} {:<4} {:>12.2}  {}\n",
        "total", "", p.total_latency_ms, p.total_area
    ));
    out
}

pub fn render_report(r: &CodesignReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{:<22} {:<10} {:<10} {:>11}\n",
        "stage", "primitive", "latency", "speedup"
    ));
    for s in &r.stages {
        out.push_str(&format!(
            "{:<22} {:<10} {:>10.2} {:>10.2}x\n",
            s.stage, s.primitive, s.latency_ms, s.speedup
        ));
    }
    out.push('\n');
    out.push_str(&format!(
        "{:<10} {:<22} {:>11} {:>9} {:>9}\n",
        "budget", "hardware", "total[ms]", "speedup", "rel.time"
    ));
    for b in &r.results {
        let hw = b.partition.hardware();
        let hw = if hw.is_empty() {
            "-".to_string()
        } else {
            hw.join("+")
        };
        out.push_str(&format!(
            "{:<10} {:<22} {:>11.2} {:>8.2}x {:>9.2}\n",
            b.partition.budget, hw, b.partition.total_latency_ms, b.speedup, b.relative_time
        ));
    }
    out
}
