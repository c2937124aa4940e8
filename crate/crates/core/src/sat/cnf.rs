//! 3-CNF formulas, assignments and DIMACS I/O.

use std::fmt;
use std::str::FromStr;

use crate::error::SatError;

/// A variable (1-based) or its complement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub var: usize,
    pub positive: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Literal { var, positive: true }
    }

    pub fn neg(var: usize) -> Self {
        Literal { var, positive: false }
    }

    /// `3` is `x3`, `-3` is its complement. Zero is not a literal.
    pub fn from_dimacs(x: i64) -> Option<Self> {
        (x != 0).then(|| Literal {
            var: x.unsigned_abs() as usize,
            positive: x > 0,
        })
    }

    pub fn to_dimacs(self) -> i64 {
        let v = self.var as i64;
        if self.positive {
            v
        } else {
            -v
        }
    }

    pub fn eval(self, a: &Assignment) -> bool {
        a.get(self.var) == self.positive
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positive {
            write!(f, "x{}", self.var)
        } else {
            write!(f, "!x{}", self.var)
        }
    }
}

pub type Clause = [Literal; 3];

/// A formula whose clauses have exactly three literals on distinct variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    variable_count: usize,
    clauses: Vec<Clause>,
}

impl CnfFormula {
    pub fn new(variable_count: usize, clauses: Vec<Clause>) -> Result<Self, SatError> {
        for (i, c) in clauses.iter().enumerate() {
            check_clause(i + 1, c, variable_count)?;
        }
        Ok(CnfFormula {
            variable_count,
            clauses,
        })
    }

    /// Builds a formula from DIMACS-style signed literals.
    pub fn from_ints(variable_count: usize, clauses: &[[i64; 3]]) -> Result<Self, SatError> {
        let mut out = Vec::with_capacity(clauses.len());
        for (i, c) in clauses.iter().enumerate() {
            let lits = c.map(Literal::from_dimacs);
            let [Some(a), Some(b), Some(c)] = lits else {
                return Err(SatError::ClauseSize { clause: i + 1, size: lits.iter().flatten().count() });
            };
            out.push([a, b, c]);
        }
        Self::new(variable_count, out)
    }

    pub fn variable_count(&self) -> usize {
        self.variable_count
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    /// 1-based index of the first clause `a` falsifies.
    pub fn first_unsatisfied(&self, a: &Assignment) -> Option<usize> {
        self.clauses
            .iter()
            .position(|c| !c.iter().any(|l| l.eval(a)))
            .map(|i| i + 1)
    }

    pub fn is_satisfied_by(&self, a: &Assignment) -> bool {
        a.len() == self.variable_count && self.first_unsatisfied(a).is_none()
    }

    pub fn to_dimacs(&self) -> String {
        let mut s = format!("p cnf {} {}\n", self.variable_count, self.clauses.len());
        for c in &self.clauses {
            for l in c {
                s.push_str(&l.to_dimacs().to_string());
                s.push(' ');
            }
            s.push_str("0\n");
        }
        s
    }
}

fn check_clause(index: usize, c: &Clause, n: usize) -> Result<(), SatError> {
    for l in c {
        if l.var == 0 || l.var > n {
            return Err(SatError::VariableOutOfRange { var: l.var, count: n });
        }
    }
    for i in 0..3 {
        for j in i + 1..3 {
            if c[i].var == c[j].var {
                return Err(SatError::RepeatedVariable { clause: index, var: c[i].var });
            }
        }
    }
    Ok(())
}

fn dimacs_error(line: usize, msg: impl Into<String>) -> SatError {
    SatError::Dimacs { line, msg: msg.into() }
}

/// Reads `p cnf n m` followed by zero-terminated clauses. Comment lines start
/// with `c`; a `%` line ends the input. A final clause may omit its `0`.
pub fn parse_dimacs(text: &str) -> Result<CnfFormula, SatError> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses: Vec<Clause> = Vec::new();
    let mut pending: Vec<Literal> = Vec::new();
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        last_line = line_no;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('%') {
            break;
        }
        if line.starts_with('p') {
            if header.is_some() {
                return Err(dimacs_error(line_no, "second header"));
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            let parsed = match parts.as_slice() {
                ["p", "cnf", n, m] => n.parse().ok().zip(m.parse().ok()),
                _ => None,
            };
            header = Some(parsed.ok_or_else(|| dimacs_error(line_no, "expected `p cnf <vars> <clauses>`"))?);
            continue;
        }
        let Some((n, _)) = header else {
            return Err(dimacs_error(line_no, "clause before the `p cnf` header"));
        };
        for tok in line.split_whitespace() {
            let x: i64 = tok
                .parse()
                .map_err(|_| dimacs_error(line_no, format!("bad literal `{tok}`")))?;
            match Literal::from_dimacs(x) {
                Some(l) => pending.push(l),
                None => {
                    let index = clauses.len() + 1;
                    clauses.push(finish_clause(index, &pending, n)?);
                    pending.clear();
                }
            }
        }
    }
    let Some((n, m)) = header else {
        return Err(dimacs_error(last_line, "missing `p cnf` header"));
    };
    if !pending.is_empty() {
        let index = clauses.len() + 1;
        clauses.push(finish_clause(index, &pending, n)?);
    }
    if clauses.len() != m {
        return Err(dimacs_error(
            last_line,
            format!("header announces {m} clauses, found {}", clauses.len()),
        ));
    }
    CnfFormula::new(n, clauses)
}

fn finish_clause(index: usize, lits: &[Literal], n: usize) -> Result<Clause, SatError> {
    let c: Clause = lits
        .try_into()
        .map_err(|_| SatError::ClauseSize { clause: index, size: lits.len() })?;
    check_clause(index, &c, n)?;
    Ok(c)
}

/// A truth value per variable; variable `v` is at position `v - 1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Assignment {
    values: Vec<bool>,
}

impl Assignment {
    pub fn new(values: Vec<bool>) -> Self {
        Assignment { values }
    }

    /// The `index`-th of the `2^n` assignments in lexicographic order, so
    /// `x1` is the most significant bit.
    pub fn from_index(index: u64, n: usize) -> Self {
        Assignment {
            values: (1..=n).map(|v| (index >> (n - v)) & 1 == 1).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Value of the 1-based variable `var`.
    pub fn get(&self, var: usize) -> bool {
        self.values[var - 1]
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }

    pub fn flipped(&self, var: usize) -> Assignment {
        let mut a = self.clone();
        a.values[var - 1] = !a.values[var - 1];
        a
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.values {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Accepts a bit string (`"101"`, separators allowed) or signed literals
/// naming every variable once (`"1 -2 3"`).
impl FromStr for Assignment {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace() && *c != ',').collect();
        if !compact.is_empty() && compact.chars().all(|c| c == '0' || c == '1') {
            return Ok(Assignment::new(compact.chars().map(|c| c == '1').collect()));
        }
        let mut lits = Vec::new();
        for tok in s.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()) {
            let x: i64 = tok.parse().map_err(|_| format!("bad literal `{tok}`"))?;
            if x != 0 {
                lits.push(x);
            }
        }
        let n = lits.len();
        let mut values = vec![None; n];
        for x in lits {
            let v = x.unsigned_abs() as usize;
            if v == 0 || v > n {
                return Err(format!("variable {v} out of range 1..={n}"));
            }
            if values[v - 1].replace(x > 0).is_some() {
                return Err(format!("variable {v} given twice"));
            }
        }
        Ok(Assignment::new(values.into_iter().map(|v| v.expect("all set")).collect()))
    }
}
