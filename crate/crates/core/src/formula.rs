//! Formulas over explicit relations, assignments, and LS instances.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::relation::{Relation, Tuple};

pub type VarId = usize;
pub type RelId = usize;

/// A relation applied to an ordered scope. Repeated variables are allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub relation: RelId,
    pub scope: Vec<VarId>,
}

/// Plain data; [`Formula::violations`] reports broken invariants.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Formula {
    pub relations: Vec<Relation>,
    pub variables: Vec<String>,
    pub constraints: Vec<Constraint>,
}

impl Formula {
    pub fn new() -> Self {
        Self::default()
    }

    /// Registers a relation. A relation with the same name and tuple set is
    /// shared; the same name with different tuples is an error.
    pub fn add_relation(&mut self, relation: Relation) -> Result<RelId> {
        if let Some(id) = self.relation_id(relation.name()) {
            return if self.relations[id].same_tuples(&relation) {
                Ok(id)
            } else {
                Err(Error::InvalidRelation(format!(
                    "two different relations named {}",
                    relation.name()
                )))
            };
        }
        self.relations.push(relation);
        Ok(self.relations.len() - 1)
    }

    pub fn add_variable(&mut self, name: impl Into<String>) -> Result<VarId> {
        let name = name.into();
        if self.variables.contains(&name) {
            return Err(Error::InvalidParameter(format!("duplicate variable {name}")));
        }
        self.variables.push(name);
        Ok(self.variables.len() - 1)
    }

    pub fn add_constraint(&mut self, relation: RelId, scope: Vec<VarId>) -> Result<()> {
        let rel = self
            .relations
            .get(relation)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown relation id {relation}")))?;
        if scope.len() != rel.arity() {
            return Err(Error::InvalidParameter(format!(
                "scope of length {} for relation {} of arity {}",
                scope.len(),
                rel.name(),
                rel.arity()
            )));
        }
        if let Some(&v) = scope.iter().find(|&&v| v >= self.variables.len()) {
            return Err(Error::InvalidParameter(format!("unknown variable id {v}")));
        }
        self.constraints.push(Constraint { relation, scope });
        Ok(())
    }

    pub fn relation_id(&self, name: &str) -> Option<RelId> {
        self.relations.iter().position(|r| r.name() == name)
    }

    pub fn variable_id(&self, name: &str) -> Option<VarId> {
        self.variables.iter().position(|v| v == name)
    }

    pub fn num_variables(&self) -> usize {
        self.variables.len()
    }

    pub fn relation_of(&self, c: &Constraint) -> &Relation {
        &self.relations[c.relation]
    }

    /// Relation ids referenced by at least one constraint, ascending.
    pub fn used_relations(&self) -> Vec<RelId> {
        let mut ids: Vec<RelId> = self.constraints.iter().map(|c| c.relation).collect();
        ids.sort_unstable();
        ids.dedup();
        ids
    }

    /// Largest arity among the constraints (0 when there are none).
    pub fn max_arity(&self) -> usize {
        self.constraints
            .iter()
            .map(|c| c.scope.len())
            .max()
            .unwrap_or(0)
    }

    /// For each variable, the constraints whose scope mentions it.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.variables.len()];
        for (ci, c) in self.constraints.iter().enumerate() {
            for &v in &c.scope {
                if inc[v].last() != Some(&ci) {
                    inc[v].push(ci);
                }
            }
        }
        inc
    }

    /// The tuple a constraint sees under `a`. Assumes a well-formed formula.
    #[inline]
    pub fn project(&self, c: &Constraint, a: &Assignment) -> Tuple {
        c.scope
            .iter()
            .fold(0, |acc, &v| acc << 1 | Tuple::from(a.get(v)))
    }

    #[inline]
    pub fn constraint_holds(&self, c: &Constraint, a: &Assignment) -> bool {
        self.relation_of(c).contains(self.project(c, a))
    }

    /// Whether `a` satisfies every constraint.
    pub fn satisfies(&self, a: &Assignment) -> Result<bool> {
        self.check_length(a)?;
        Ok(self.constraints.iter().all(|c| self.constraint_holds(c, a)))
    }

    /// Index of the first constraint `a` violates.
    pub fn first_violated(&self, a: &Assignment) -> Option<usize> {
        self.constraints
            .iter()
            .position(|c| !self.constraint_holds(c, a))
    }

    pub fn check_length(&self, a: &Assignment) -> Result<()> {
        if a.len() != self.variables.len() {
            return Err(Error::AssignmentLength {
                expected: self.variables.len(),
                got: a.len(),
            });
        }
        Ok(())
    }

    /// Structural problems with the formula itself.
    pub fn violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut seen = HashSet::new();
        for name in &self.variables {
            if !seen.insert(name.as_str()) {
                out.push(Violation::DuplicateVariable(name.clone()));
            }
        }
        let mut names = HashSet::new();
        for rel in &self.relations {
            if !names.insert(rel.name()) {
                out.push(Violation::DuplicateRelation(rel.name().to_owned()));
            }
        }
        for (ci, c) in self.constraints.iter().enumerate() {
            let Some(rel) = self.relations.get(c.relation) else {
                out.push(Violation::UnknownRelation { constraint: ci });
                continue;
            };
            if rel.is_empty() {
                out.push(Violation::EmptyRelation {
                    constraint: ci,
                    relation: rel.name().to_owned(),
                });
            }
            if c.scope.len() != rel.arity() {
                out.push(Violation::ScopeArity {
                    constraint: ci,
                    expected: rel.arity(),
                    got: c.scope.len(),
                });
            }
            for &v in &c.scope {
                if v >= self.variables.len() {
                    out.push(Violation::BadScope {
                        constraint: ci,
                        variable: v,
                    });
                }
            }
        }
        out
    }
}

/// A total 0/1 assignment, indexed like `Formula::variables`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assignment(Vec<bool>);

impl Assignment {
    pub fn new(bits: Vec<bool>) -> Self {
        Self(bits)
    }

    pub fn zeros(n: usize) -> Self {
        Self(vec![false; n])
    }

    pub fn ones(n: usize) -> Self {
        Self(vec![true; n])
    }

    /// From 0/1 integers; any non-zero value counts as 1.
    pub fn from_bits(bits: &[u8]) -> Self {
        Self(bits.iter().map(|&b| b != 0).collect())
    }

    /// Low `n` bits of `mask`, bit `i` giving variable `i`.
    pub fn from_mask(mask: u64, n: usize) -> Self {
        Self((0..n).map(|i| mask >> i & 1 == 1).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn get(&self, v: VarId) -> bool {
        self.0[v]
    }

    #[inline]
    pub fn set(&mut self, v: VarId, b: bool) {
        self.0[v] = b;
    }

    #[inline]
    pub fn flip(&mut self, v: VarId) {
        self.0[v] = !self.0[v];
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    /// Hamming weight.
    pub fn weight(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }

    /// Hamming distance.
    pub fn distance(&self, other: &Assignment) -> Result<usize> {
        if self.len() != other.len() {
            return Err(Error::AssignmentLength {
                expected: self.len(),
                got: other.len(),
            });
        }
        Ok(self.0.iter().zip(&other.0).filter(|(a, b)| a != b).count())
    }

    /// Variables on which the two assignments differ.
    pub fn difference(&self, other: &Assignment) -> Vec<VarId> {
        (0..self.len().min(other.len()))
            .filter(|&i| self.0[i] != other.0[i])
            .collect()
    }
}

impl fmt::Debug for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.0.iter().map(|&b| if b { '1' } else { '0' }).collect();
        write!(f, "Assignment({s})")
    }
}

impl From<Vec<bool>> for Assignment {
    fn from(bits: Vec<bool>) -> Self {
        Self(bits)
    }
}

/// A broken invariant, reported by [`validate_instance`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    DuplicateVariable(String),
    DuplicateRelation(String),
    UnknownRelation { constraint: usize },
    EmptyRelation { constraint: usize, relation: String },
    ScopeArity { constraint: usize, expected: usize, got: usize },
    BadScope { constraint: usize, variable: usize },
    AssignmentLength { expected: usize, got: usize },
    BaseNotSatisfying { constraint: usize },
}

impl Violation {
    /// Stable short tag.
    pub fn tag(&self) -> &'static str {
        match self {
            Violation::DuplicateVariable(_) => "duplicate-variable",
            Violation::DuplicateRelation(_) => "duplicate-relation",
            Violation::UnknownRelation { .. } => "unknown-relation",
            Violation::EmptyRelation { .. } => "empty-relation",
            Violation::ScopeArity { .. } => "scope-arity",
            Violation::BadScope { .. } => "bad-scope",
            Violation::AssignmentLength { .. } => "assignment-length",
            Violation::BaseNotSatisfying { .. } => "base-not-satisfying",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.tag())?;
        match self {
            Violation::DuplicateVariable(name) => write!(f, " ({name})"),
            Violation::DuplicateRelation(name) => write!(f, " ({name})"),
            Violation::UnknownRelation { constraint } => write!(f, " (constraint {constraint})"),
            Violation::EmptyRelation {
                constraint,
                relation,
            } => write!(f, " (constraint {constraint}, relation {relation})"),
            Violation::ScopeArity {
                constraint,
                expected,
                got,
            } => write!(f, " (constraint {constraint}: {got} variables for arity {expected})"),
            Violation::BadScope {
                constraint,
                variable,
            } => write!(f, " (constraint {constraint}, variable id {variable})"),
            Violation::AssignmentLength { expected, got } => {
                write!(f, " ({got} bits for {expected} variables)")
            }
            Violation::BaseNotSatisfying { constraint } => write!(f, " (constraint {constraint})"),
        }
    }
}

/// All invariant violations of the triple `(formula, base, k)`; empty iff
/// it forms a valid LS instance.
pub fn validate_instance(formula: &Formula, base: &Assignment, _k: usize) -> Vec<Violation> {
    let mut out = formula.violations();
    if base.len() != formula.num_variables() {
        out.push(Violation::AssignmentLength {
            expected: formula.num_variables(),
            got: base.len(),
        });
    }
    if out.is_empty() {
        if let Some(ci) = formula.first_violated(base) {
            out.push(Violation::BaseNotSatisfying { constraint: ci });
        }
    }
    out
}

/// A formula, a satisfying assignment and a distance budget: ask for a
/// strictly lighter satisfying assignment within Hamming distance `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LsInstance {
    formula: Formula,
    base: Assignment,
    k: usize,
}

impl LsInstance {
    pub fn new(formula: Formula, base: Assignment, k: usize) -> Result<Self> {
        let violations = validate_instance(&formula, &base, k);
        if !violations.is_empty() {
            return Err(Error::InvalidInstance(violations));
        }
        Ok(Self { formula, base, k })
    }

    pub fn formula(&self) -> &Formula {
        &self.formula
    }

    pub fn base(&self) -> &Assignment {
        &self.base
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Same formula and base under a different budget.
    pub fn with_k(&self, k: usize) -> Self {
        Self {
            k,
            ..self.clone()
        }
    }

    pub fn num_variables(&self) -> usize {
        self.formula.num_variables()
    }

    pub fn into_parts(self) -> (Formula, Assignment, usize) {
        (self.formula, self.base, self.k)
    }

    /// Checks that `w` is a solution: satisfying, strictly lighter than the
    /// base and within distance `k` of it.
    pub fn check_witness(&self, w: &Assignment) -> std::result::Result<(), String> {
        match self.formula.satisfies(w) {
            Ok(true) => {}
            Ok(false) => return Err("witness does not satisfy the formula".into()),
            Err(e) => return Err(e.to_string()),
        }
        if w.weight() >= self.base.weight() {
            return Err(format!(
                "witness weight {} is not below base weight {}",
                w.weight(),
                self.base.weight()
            ));
        }
        let d = w.distance(&self.base).map_err(|e| e.to_string())?;
        if d > self.k {
            return Err(format!("witness distance {d} exceeds k = {}", self.k));
        }
        Ok(())
    }
}
