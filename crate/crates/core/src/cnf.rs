//! CNF formulas with at most three literals per clause, DIMACS `cnf`
//! parsing, and a tiny satisfiability oracle.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CnfError {
    #[error("line {line}: malformed input: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("clause {clause} has {len} literals; at most 3 are supported")]
    TooManyLiterals { clause: usize, len: usize },
    #[error("clause {clause} contains variable {var} and its negation")]
    Tautology { clause: usize, var: usize },
    #[error("clause {clause} references variable {var}, but only {num_vars} are declared")]
    VarOutOfRange {
        clause: usize,
        var: usize,
        num_vars: usize,
    },
}

/// A CNF formula. Literals are nonzero `i32`s: `+i` is variable `i`,
/// `-i` its negation, variables numbered `1..=num_vars`. Clauses carry at
/// most three literals and never a variable together with its negation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cnf {
    pub num_vars: usize,
    pub clauses: Vec<Vec<i32>>,
}

impl Cnf {
    /// Validates and normalizes (deduplicates repeated literals).
    pub fn new(num_vars: usize, clauses: Vec<Vec<i32>>) -> Result<Cnf, CnfError> {
        let mut out = Vec::with_capacity(clauses.len());
        for (ci, clause) in clauses.into_iter().enumerate() {
            let mut lits: Vec<i32> = Vec::new();
            for lit in clause {
                let var = lit.unsigned_abs() as usize;
                if lit == 0 || var > num_vars {
                    return Err(CnfError::VarOutOfRange {
                        clause: ci,
                        var,
                        num_vars,
                    });
                }
                if lits.contains(&-lit) {
                    return Err(CnfError::Tautology { clause: ci, var });
                }
                if !lits.contains(&lit) {
                    lits.push(lit);
                }
            }
            if lits.len() > 3 {
                return Err(CnfError::TooManyLiterals {
                    clause: ci,
                    len: lits.len(),
                });
            }
            out.push(lits);
        }
        Ok(Cnf {
            num_vars,
            clauses: out,
        })
    }

    /// Whether every variable occurs in exactly three clauses, at most
    /// twice positively and at most twice negatively.
    pub fn is_restricted(&self) -> bool {
        let mut pos = vec![0usize; self.num_vars + 1];
        let mut neg = vec![0usize; self.num_vars + 1];
        for clause in &self.clauses {
            for &lit in clause {
                if lit > 0 {
                    pos[lit as usize] += 1;
                } else {
                    neg[-lit as usize] += 1;
                }
            }
        }
        (1..=self.num_vars).all(|v| pos[v] + neg[v] == 3 && pos[v] <= 2 && neg[v] <= 2)
    }

    /// Exhaustive satisfiability check; rejects formulas with more than
    /// `var_cap` variables.
    pub fn satisfiable_brute(&self, var_cap: usize) -> Result<bool, String> {
        if self.num_vars > var_cap {
            return Err(format!(
                "satisfiability oracle capped at {var_cap} variables, got {}",
                self.num_vars
            ));
        }
        for assignment in 0u64..1 << self.num_vars {
            let ok = self.clauses.iter().all(|clause| {
                clause.iter().any(|&lit| {
                    let var = lit.unsigned_abs() as usize;
                    let value = assignment >> (var - 1) & 1 == 1;
                    (lit > 0) == value
                })
            });
            if ok {
                return Ok(true);
            }
        }
        Ok(false)
    }

    pub fn to_dimacs_string(&self) -> String {
        let mut s = format!("p cnf {} {}\n", self.num_vars, self.clauses.len());
        for clause in &self.clauses {
            for lit in clause {
                s.push_str(&lit.to_string());
                s.push(' ');
            }
            s.push_str("0\n");
        }
        s
    }
}

/// Parses DIMACS `cnf`: `c` comments, `p cnf <vars> <clauses>`, one
/// 0-terminated clause per line.
pub fn parse_dimacs_cnf(text: &str) -> Result<Cnf, CnfError> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses: Vec<Vec<i32>> = Vec::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let t = raw.trim();
        if t.is_empty() || t.starts_with('c') {
            continue;
        }
        if t.starts_with('p') {
            if header.is_some() {
                return Err(CnfError::Malformed {
                    line,
                    reason: "duplicate problem line".into(),
                });
            }
            let tokens: Vec<&str> = t.split_ascii_whitespace().collect();
            if tokens.len() != 4 || tokens[1] != "cnf" {
                return Err(CnfError::Malformed {
                    line,
                    reason: "expected `p cnf <vars> <clauses>`".into(),
                });
            }
            let n = tokens[2].parse::<usize>().map_err(|_| CnfError::Malformed {
                line,
                reason: format!("invalid variable count {:?}", tokens[2]),
            })?;
            let m = tokens[3].parse::<usize>().map_err(|_| CnfError::Malformed {
                line,
                reason: format!("invalid clause count {:?}", tokens[3]),
            })?;
            header = Some((n, m));
            continue;
        }
        if header.is_none() {
            return Err(CnfError::Malformed {
                line,
                reason: "clause before problem line".into(),
            });
        }
        let mut lits = Vec::new();
        let mut terminated = false;
        for tok in t.split_ascii_whitespace() {
            let lit = tok.parse::<i32>().map_err(|_| CnfError::Malformed {
                line,
                reason: format!("invalid literal {tok:?}"),
            })?;
            if lit == 0 {
                terminated = true;
                break;
            }
            lits.push(lit);
        }
        if !terminated {
            return Err(CnfError::Malformed {
                line,
                reason: "clause line must end with 0".into(),
            });
        }
        clauses.push(lits);
    }
    let Some((n, m)) = header else {
        return Err(CnfError::Malformed {
            line: last_line.max(1),
            reason: "missing problem line".into(),
        });
    };
    if clauses.len() != m {
        return Err(CnfError::Malformed {
            line: last_line.max(1),
            reason: format!("declared {m} clauses but found {}", clauses.len()),
        });
    }
    Cnf::new(n, clauses)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_roundtrip() {
        let text = "c example\np cnf 3 2\n1 -2 3 0\n-1 2 0\n";
        let cnf = parse_dimacs_cnf(text).unwrap();
        assert_eq!(cnf.num_vars, 3);
        assert_eq!(cnf.clauses, vec![vec![1, -2, 3], vec![-1, 2]]);
        let back = parse_dimacs_cnf(&cnf.to_dimacs_string()).unwrap();
        assert_eq!(back, cnf);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            parse_dimacs_cnf("p cnf 2 1\n1 3 0\n"),
            Err(CnfError::VarOutOfRange { .. })
        ));
        assert!(matches!(
            parse_dimacs_cnf("p cnf 2 1\n1 -1 0\n"),
            Err(CnfError::Tautology { .. })
        ));
        assert!(matches!(
            parse_dimacs_cnf("p cnf 4 1\n1 2 3 4 0\n"),
            Err(CnfError::TooManyLiterals { .. })
        ));
        assert!(matches!(
            parse_dimacs_cnf("p cnf 2 1\n1 2\n"),
            Err(CnfError::Malformed { line: 2, .. })
        ));
    }

    #[test]
    fn restricted_flag() {
        // every variable in exactly 3 clauses, <=2 positive, <=2 negative
        let cnf = Cnf::new(
            4,
            vec![
                vec![1, 2, -4],
                vec![-1, 2, -3],
                vec![-2, 3, 4],
                vec![-1, -3, -4],
            ],
        )
        .unwrap();
        assert!(cnf.is_restricted());
        let cnf = Cnf::new(2, vec![vec![1, 2], vec![-1, -2]]).unwrap();
        assert!(!cnf.is_restricted());
    }

    #[test]
    fn sat_oracle() {
        let sat = Cnf::new(2, vec![vec![1, 2], vec![-1]]).unwrap();
        assert_eq!(sat.satisfiable_brute(20), Ok(true));
        let unsat = Cnf::new(1, vec![vec![1], vec![-1]]).unwrap();
        assert_eq!(unsat.satisfiable_brute(20), Ok(false));
    }
}
