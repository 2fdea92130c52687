//! JSON forms of instances, schedules and sweep reports.

use serde::{Deserialize, Serialize};

use crate::colour::{Colour, Colouring, Cover, Instance, Palette};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::hunt::{Finding, SweepReport};
use crate::sched::Schedule;

/// An instance with optional start and target colourings, as read from or
/// written to Instance JSON.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "InstanceDoc", into = "InstanceDoc")]
pub struct Problem {
    pub instance: Instance,
    pub alpha: Option<Colouring>,
    pub beta: Option<Colouring>,
}

impl Problem {
    pub fn new(instance: Instance) -> Problem {
        Problem { instance, alpha: None, beta: None }
    }

    pub fn with_pair(instance: Instance, alpha: Colouring, beta: Colouring) -> Problem {
        Problem { instance, alpha: Some(alpha), beta: Some(beta) }
    }

    /// Both colourings, or an error naming the missing one.
    pub fn pair(&self) -> Result<(&[Colour], &[Colour])> {
        match (&self.alpha, &self.beta) {
            (Some(a), Some(b)) => Ok((a, b)),
            (None, _) => Err(Error::BadInstance("instance has no alpha colouring".into())),
            _ => Err(Error::BadInstance("instance has no beta colouring".into())),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum ModeDoc {
    List,
    Corr,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct EdgeMatchingDoc {
    u: usize,
    v: usize,
    pairs: Vec<(Colour, Colour)>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
struct InstanceDoc {
    n: usize,
    edges: Vec<(usize, usize)>,
    mode: ModeDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    lists: Option<Vec<Vec<Colour>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    list_sizes: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    matchings: Option<Vec<EdgeMatchingDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    alpha: Option<Colouring>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    beta: Option<Colouring>,
}

impl TryFrom<InstanceDoc> for Problem {
    type Error = Error;

    fn try_from(doc: InstanceDoc) -> Result<Problem> {
        let g = Graph::new(doc.n, doc.edges)?;
        let instance = match doc.mode {
            ModeDoc::List => {
                let lists = doc.lists.ok_or_else(|| Error::BadInstance("list mode needs \"lists\"".into()))?;
                Instance::with_lists(g, lists)?
            }
            ModeDoc::Corr => {
                let sizes = doc
                    .list_sizes
                    .ok_or_else(|| Error::BadInstance("corr mode needs \"listSizes\"".into()))?;
                let ms = doc.matchings.unwrap_or_default().into_iter().map(|m| ((m.u, m.v), m.pairs));
                let cover = Cover::new(&g, sizes, ms)?;
                Instance::with_cover(g, cover)
            }
        };
        for c in doc.alpha.iter().chain(doc.beta.iter()) {
            instance.check_proper(c)?;
        }
        Ok(Problem { instance, alpha: doc.alpha, beta: doc.beta })
    }
}

impl From<Problem> for InstanceDoc {
    fn from(p: Problem) -> InstanceDoc {
        let g = p.instance.graph();
        let mut doc = InstanceDoc {
            n: g.n(),
            edges: g.edges().to_vec(),
            mode: ModeDoc::List,
            lists: None,
            list_sizes: None,
            matchings: None,
            alpha: p.alpha,
            beta: p.beta,
        };
        match p.instance.palette() {
            Palette::Lists(l) => doc.lists = Some(l.clone()),
            Palette::Cover(c) => {
                doc.mode = ModeDoc::Corr;
                doc.list_sizes = Some(c.sizes().to_vec());
                doc.matchings = Some(
                    c.matchings()
                        .iter()
                        .filter(|(_, pairs)| !pairs.is_empty())
                        .map(|(&(u, v), pairs)| EdgeMatchingDoc { u, v, pairs: pairs.clone() })
                        .collect(),
                );
            }
        }
        doc
    }
}

pub fn parse_problem(text: &str) -> Result<Problem> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn problem_to_json(p: &Problem) -> String {
    serde_json::to_string(p).expect("instances always serialise")
}

pub fn parse_schedule(text: &str) -> Result<Schedule> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn schedule_to_json(s: &Schedule) -> String {
    serde_json::to_string(s).expect("schedules always serialise")
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
struct Summary {
    instances_checked: u64,
    timing: std::collections::BTreeMap<String, u64>,
    budget_exceeded: bool,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
enum ReportLine {
    Violation(Finding),
    NearTight(Finding),
    Summary(Summary),
}

/// One JSON record per line: each violation, each near-tight instance, then a summary.
pub fn report_to_jsonl(r: &SweepReport) -> String {
    let mut out = String::new();
    let lines = r
        .violations
        .iter()
        .cloned()
        .map(ReportLine::Violation)
        .chain(r.near_tight.iter().cloned().map(ReportLine::NearTight))
        .chain(std::iter::once(ReportLine::Summary(Summary {
            instances_checked: r.instances_checked,
            timing: r.timing.clone(),
            budget_exceeded: r.budget_exceeded,
        })));
    for line in lines {
        out.push_str(&serde_json::to_string(&line).expect("reports always serialise"));
        out.push('\n');
    }
    out
}

pub fn parse_report_jsonl(text: &str) -> Result<SweepReport> {
    let mut r = SweepReport::default();
    for line in text.lines().filter(|l| !l.trim().is_empty()) {
        match serde_json::from_str(line).map_err(|e| Error::Parse(e.to_string()))? {
            ReportLine::Violation(f) => r.violations.push(f),
            ReportLine::NearTight(f) => r.near_tight.push(f),
            ReportLine::Summary(s) => {
                r.instances_checked = s.instances_checked;
                r.timing = s.timing;
                r.budget_exceeded = s.budget_exceeded;
            }
        }
    }
    Ok(r)
}
