use alloc::string::String;
use alloc::vec::Vec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Relation {
    Eq,
    Le,
    Lt,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Eq => "=",
            Relation::Le => "<=",
            Relation::Lt => "<",
        }
    }

    pub fn holds(self, lhs: i128, rhs: i128) -> bool {
        match self {
            Relation::Eq => lhs == rhs,
            Relation::Le => lhs <= rhs,
            Relation::Lt => lhs < rhs,
        }
    }
}

/// One checked statement with both sides' values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Clause {
    pub id: String,
    pub lhs: i128,
    pub rhs: i128,
    pub relation: Relation,
    /// Clauses that are only recorded do not affect the verdict.
    pub asserted: bool,
    pub pass: bool,
    pub ext_degree: u32,
}

/// The outcome of a verifier, sorted by clause id.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Report {
    pub subject: String,
    pub clauses: Vec<Clause>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(subject: &str) -> Report {
        Report { subject: subject.into(), clauses: Vec::new(), notes: Vec::new() }
    }

    pub fn check(&mut self, id: &str, lhs: i128, rel: Relation, rhs: i128, ext_degree: u32) -> bool {
        let pass = rel.holds(lhs, rhs);
        self.clauses.push(Clause { id: id.into(), lhs, rhs, relation: rel, asserted: true, pass, ext_degree });
        pass
    }

    /// Adds a clause that does not count towards the verdict.
    pub fn record(&mut self, id: &str, lhs: i128, rel: Relation, rhs: i128, ext_degree: u32) {
        let pass = rel.holds(lhs, rhs);
        self.clauses.push(Clause { id: id.into(), lhs, rhs, relation: rel, asserted: false, pass, ext_degree });
    }

    /// `check` when `asserted`, otherwise `record`.
    pub fn claim(&mut self, asserted: bool, id: &str, lhs: i128, rel: Relation, rhs: i128, ext_degree: u32) {
        if asserted {
            self.check(id, lhs, rel, rhs, ext_degree);
        } else {
            self.record(id, lhs, rel, rhs, ext_degree);
        }
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn merge(&mut self, o: Report) {
        self.clauses.extend(o.clauses);
        self.notes.extend(o.notes);
    }

    pub fn finish(mut self) -> Report {
        self.clauses.sort_by(|a, b| a.id.cmp(&b.id));
        self
    }

    pub fn pass(&self) -> bool {
        self.clauses.iter().all(|c| !c.asserted || c.pass)
    }

    pub fn failures(&self) -> Vec<&Clause> {
        self.clauses.iter().filter(|c| c.asserted && !c.pass).collect()
    }
}
