//! Machine-readable run reports.

use indexmap::IndexMap;
use lscsp::relation::to_bitstring;
use lscsp::{Algorithm, Answer, Decision, LanguageVerdict, LsClass, LsInstance, MinOnesClass, Relation, RelationClass};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    /// The argument vector that produced the report.
    pub command: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<VerdictReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decision: Option<DecisionReport>,
    /// Wall time in whole microseconds, so the report round-trips exactly.
    pub wall_time_us: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle_agreement: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictReport {
    pub ls_class: LsClass,
    pub np_hard: bool,
    pub minones_class: MinOnesClass,
    pub algorithm: Algorithm,
    pub relations: Vec<RelationReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationReport {
    pub name: String,
    pub arity: usize,
    pub tuples: usize,
    pub zero_valid: bool,
    pub one_valid: bool,
    pub horn: bool,
    pub affine: bool,
    pub width2_affine: bool,
    pub ihsb_minus: bool,
    pub flip_separable: bool,
    /// Two tuples whose coordinatewise AND is missing.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub horn_witness: Option<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flip_witness: Option<FlipWitnessReport>,
}

/// `tuple` with flip sets `s1 ⊂ s2` whose difference is not a flip set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlipWitnessReport {
    pub tuple: String,
    pub s1: String,
    pub s2: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecisionReport {
    pub answer: Answer,
    pub algorithm: Algorithm,
    pub nodes: u64,
    pub branch_points: u64,
    /// Variable name to bit; absent on NO.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<IndexMap<String, u8>>,
}

impl VerdictReport {
    pub fn new(verdict: &LanguageVerdict, relations: &[&Relation]) -> Self {
        Self {
            ls_class: verdict.ls_class,
            np_hard: verdict.np_hard,
            minones_class: verdict.minones_class,
            algorithm: verdict.algorithm,
            relations: verdict
                .relations
                .iter()
                .zip(relations)
                .map(|((_, c), r)| RelationReport::new(r, c))
                .collect(),
        }
    }
}

impl RelationReport {
    pub fn new(r: &Relation, c: &RelationClass) -> Self {
        let bits = |t| to_bitstring(t, r.arity());
        Self {
            name: r.name().to_owned(),
            arity: r.arity(),
            tuples: r.len(),
            zero_valid: c.zero_valid,
            one_valid: c.one_valid,
            horn: c.horn,
            affine: c.affine,
            width2_affine: c.width2_affine,
            ihsb_minus: c.ihsb_minus,
            flip_separable: c.flip_separable,
            horn_witness: c.horn_witness.map(|(a, b)| [bits(a), bits(b)]),
            flip_witness: c.flip_witness.map(|w| FlipWitnessReport {
                tuple: bits(w.tuple),
                s1: bits(w.s1),
                s2: bits(w.s2),
            }),
        }
    }
}

impl DecisionReport {
    pub fn new(inst: &LsInstance, d: &Decision) -> Self {
        let names = &inst.formula().variables;
        Self {
            answer: d.answer,
            algorithm: d.stats.algorithm,
            nodes: d.stats.nodes,
            branch_points: d.stats.branch_points,
            witness: d.witness.as_ref().map(|w| {
                names
                    .iter()
                    .zip(w.bits())
                    .map(|(n, &b)| (n.clone(), u8::from(b)))
                    .collect()
            }),
        }
    }
}

impl RunReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    /// Human-readable rendering.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(v) = &self.verdict {
            for r in &v.relations {
                out += &format!(
                    "relation {} (arity {}, {} tuples): zero_valid={} one_valid={} horn={} affine={} width2_affine={} ihsb_minus={} flip_separable={}\n",
                    r.name, r.arity, r.tuples, r.zero_valid, r.one_valid, r.horn, r.affine, r.width2_affine, r.ihsb_minus, r.flip_separable
                );
                if let Some([a, b]) = &r.horn_witness {
                    out += &format!("  not Horn: {a} AND {b} is missing\n");
                }
                if let Some(w) = &r.flip_witness {
                    out += &format!(
                        "  not flip separable: tuple {} with flip sets {} inside {}\n",
                        w.tuple, w.s1, w.s2
                    );
                }
            }
            out += &format!(
                "verdict: LS {}{}, Min-Ones {}, algorithm {}\n",
                v.ls_class,
                if v.np_hard { " (NP-hard)" } else { "" },
                v.minones_class,
                v.algorithm
            );
        }
        if let Some(d) = &self.decision {
            out += &format!("answer: {}\n", d.answer);
            out += &format!("algorithm: {}\n", d.algorithm);
            out += &format!("nodes: {} (branch points: {})\n", d.nodes, d.branch_points);
            if let Some(w) = &d.witness {
                let cells: Vec<String> = w.iter().map(|(n, b)| format!("{n}={b}")).collect();
                out += &format!("witness: {}\n", cells.join(" "));
            }
        }
        if let Some(a) = self.oracle_agreement {
            out += &format!("oracle agreement: {a}\n");
        }
        out += &format!("wall time: {} us\n", self.wall_time_us);
        out
    }
}
