//! Mini-language for naming graph constructions on the command line:
//! leaf constructors with integer arguments plus a `subdiv(...)` unary
//! operator, e.g. `subdiv(complete(7))` or `chain(4,6)`.

use thiserror::Error;

use crate::chain::{chain, ChainLayout};
use crate::families::{
    complete, complete_minus_matching, cycle, path, star, torus, ConstructError,
};
use crate::graph::Graph;
use crate::subdivision::{subdivide, SubdivisionLabeling};

/// Guard against runaway nesting.
pub const MAX_DEPTH: usize = 8;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DslError {
    #[error("offset {offset}: unexpected character {found:?}")]
    Unexpected { offset: usize, found: char },
    #[error("offset {offset}: unexpected end of input")]
    UnexpectedEnd { offset: usize },
    #[error("offset {offset}: unknown constructor \"{name}\"")]
    UnknownConstructor { offset: usize, name: String },
    #[error("offset {offset}: {name} takes {expected} argument(s), got {got}")]
    ArityMismatch {
        offset: usize,
        name: String,
        expected: usize,
        got: usize,
    },
    #[error("offset {offset}: {message}")]
    RangeViolation { offset: usize, message: String },
    #[error("offset {offset}: integer literal too large")]
    IntTooLarge { offset: usize },
    #[error("offset {offset}: trailing input after the spec")]
    TrailingInput { offset: usize },
    #[error("offset {offset}: nesting deeper than {MAX_DEPTH}")]
    TooDeep { offset: usize },
}

/// Abstract syntax of a construction expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConstructionSpec {
    Complete(usize),
    Cmm(usize, usize),
    Star(usize),
    Cycle(usize),
    Path(usize),
    Torus(usize, usize),
    Chain(u32, u32),
    Subdiv(Box<ConstructionSpec>),
}

impl ConstructionSpec {
    /// Canonical text form; `parse_spec` inverts it.
    pub fn pretty(&self) -> String {
        match self {
            ConstructionSpec::Complete(n) => format!("complete({n})"),
            ConstructionSpec::Cmm(n, k) => format!("cmm({n},{k})"),
            ConstructionSpec::Star(n) => format!("star({n})"),
            ConstructionSpec::Cycle(n) => format!("cycle({n})"),
            ConstructionSpec::Path(n) => format!("path({n})"),
            ConstructionSpec::Torus(a, b) => format!("torus({a},{b})"),
            ConstructionSpec::Chain(c1, c2) => format!("chain({c1},{c2})"),
            ConstructionSpec::Subdiv(inner) => format!("subdiv({})", inner.pretty()),
        }
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expect(&mut self, ch: u8) -> Result<(), DslError> {
        match self.peek() {
            Some(b) if b == ch => {
                self.pos += 1;
                Ok(())
            }
            Some(b) => Err(DslError::Unexpected {
                offset: self.pos,
                found: b as char,
            }),
            None => Err(DslError::UnexpectedEnd { offset: self.pos }),
        }
    }

    fn ident(&mut self) -> Result<(usize, String), DslError> {
        match self.peek() {
            Some(b) if b.is_ascii_lowercase() => {}
            Some(b) => {
                return Err(DslError::Unexpected {
                    offset: self.pos,
                    found: b as char,
                })
            }
            None => return Err(DslError::UnexpectedEnd { offset: self.pos }),
        }
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_lowercase() {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.bytes[start..self.pos])
            .expect("ascii")
            .to_string();
        Ok((start, name))
    }

    fn int(&mut self) -> Result<usize, DslError> {
        match self.peek() {
            Some(b) if b.is_ascii_digit() => {}
            Some(b) => {
                return Err(DslError::Unexpected {
                    offset: self.pos,
                    found: b as char,
                })
            }
            None => return Err(DslError::UnexpectedEnd { offset: self.pos }),
        }
        let start = self.pos;
        let mut value = 0usize;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add((self.bytes[self.pos] - b'0') as usize))
                .ok_or(DslError::IntTooLarge { offset: start })?;
            if value > u32::MAX as usize {
                return Err(DslError::IntTooLarge { offset: start });
            }
            self.pos += 1;
        }
        Ok(value)
    }

    fn args(&mut self) -> Result<Vec<usize>, DslError> {
        self.expect(b'(')?;
        let mut out = vec![self.int()?];
        while self.peek() == Some(b',') {
            self.pos += 1;
            out.push(self.int()?);
        }
        self.expect(b')')?;
        Ok(out)
    }

    fn spec(&mut self, depth: usize) -> Result<ConstructionSpec, DslError> {
        let (offset, name) = self.ident()?;
        if depth >= MAX_DEPTH {
            return Err(DslError::TooDeep { offset });
        }
        if name == "subdiv" {
            self.expect(b'(')?;
            let inner = self.spec(depth + 1)?;
            self.expect(b')')?;
            return Ok(ConstructionSpec::Subdiv(Box::new(inner)));
        }
        let args = self.args()?;
        let arity = |expected: usize| -> Result<(), DslError> {
            if args.len() == expected {
                Ok(())
            } else {
                Err(DslError::ArityMismatch {
                    offset,
                    name: name.clone(),
                    expected,
                    got: args.len(),
                })
            }
        };
        let range = |ok: bool, message: &str| -> Result<(), DslError> {
            if ok {
                Ok(())
            } else {
                Err(DslError::RangeViolation {
                    offset,
                    message: message.to_string(),
                })
            }
        };
        match name.as_str() {
            "complete" => {
                arity(1)?;
                range(args[0] >= 1, "complete needs n >= 1")?;
                Ok(ConstructionSpec::Complete(args[0]))
            }
            "cmm" => {
                arity(2)?;
                range(2 * args[1] <= args[0], "cmm needs 2k <= n")?;
                Ok(ConstructionSpec::Cmm(args[0], args[1]))
            }
            "star" => {
                arity(1)?;
                range(args[0] >= 2, "star needs n >= 2")?;
                Ok(ConstructionSpec::Star(args[0]))
            }
            "cycle" => {
                arity(1)?;
                range(args[0] >= 3, "cycle needs n >= 3")?;
                Ok(ConstructionSpec::Cycle(args[0]))
            }
            "path" => {
                arity(1)?;
                range(args[0] >= 1, "path needs n >= 1")?;
                Ok(ConstructionSpec::Path(args[0]))
            }
            "torus" => {
                arity(2)?;
                range(args[0] >= 3 && args[1] >= 3, "torus needs both sides >= 3")?;
                Ok(ConstructionSpec::Torus(args[0], args[1]))
            }
            "chain" => {
                arity(2)?;
                range(
                    args[0] >= 4 && args[1] >= args[0] + 2,
                    "chain needs 4 <= b < a, i.e. c1 >= 4 and c2 >= c1 + 2",
                )?;
                Ok(ConstructionSpec::Chain(args[0] as u32, args[1] as u32))
            }
            _ => Err(DslError::UnknownConstructor { offset, name }),
        }
    }
}

/// Parses a construction expression; whitespace-insensitive, lowercase
/// keywords, errors carry byte offsets.
pub fn parse_spec(text: &str) -> Result<ConstructionSpec, DslError> {
    let mut parser = Parser {
        bytes: text.as_bytes(),
        pos: 0,
    };
    let spec = parser.spec(0)?;
    if parser.peek().is_some() {
        return Err(DslError::TrailingInput { offset: parser.pos });
    }
    Ok(spec)
}

/// Result of evaluating a spec; subdivision and chain roots keep their
/// labelings.
#[derive(Debug, Clone)]
pub enum EvalOutput {
    Plain(Graph),
    Subdivision {
        graph: Graph,
        labeling: SubdivisionLabeling,
    },
    Chain(Box<ChainLayout>),
}

impl EvalOutput {
    pub fn graph(&self) -> &Graph {
        match self {
            EvalOutput::Plain(g) => g,
            EvalOutput::Subdivision { graph, .. } => graph,
            EvalOutput::Chain(layout) => layout.graph(),
        }
    }

    pub fn into_graph(self) -> Graph {
        match self {
            EvalOutput::Plain(g) => g,
            EvalOutput::Subdivision { graph, .. } => graph,
            EvalOutput::Chain(layout) => layout.graph().clone(),
        }
    }
}

/// Materializes the construction; deterministic for a given spec.
pub fn eval_spec(spec: &ConstructionSpec) -> Result<EvalOutput, ConstructError> {
    match spec {
        ConstructionSpec::Subdiv(inner) => {
            let base = eval_spec(inner)?.into_graph();
            let (graph, labeling) = subdivide(&base);
            Ok(EvalOutput::Subdivision { graph, labeling })
        }
        ConstructionSpec::Chain(c1, c2) => Ok(EvalOutput::Chain(Box::new(chain(*c1, *c2)?))),
        ConstructionSpec::Complete(n) => Ok(EvalOutput::Plain(complete(*n)?)),
        ConstructionSpec::Cmm(n, k) => Ok(EvalOutput::Plain(complete_minus_matching(*n, *k)?)),
        ConstructionSpec::Star(n) => Ok(EvalOutput::Plain(star(*n)?)),
        ConstructionSpec::Cycle(n) => Ok(EvalOutput::Plain(cycle(*n)?)),
        ConstructionSpec::Path(n) => Ok(EvalOutput::Plain(path(*n)?)),
        ConstructionSpec::Torus(a, b) => Ok(EvalOutput::Plain(torus(*a, *b)?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        assert_eq!(
            parse_spec("subdiv(complete(7))"),
            Ok(ConstructionSpec::Subdiv(Box::new(ConstructionSpec::Complete(7))))
        );
        assert_eq!(parse_spec("chain(4,6)"), Ok(ConstructionSpec::Chain(4, 6)));
        assert_eq!(
            parse_spec("subdiv(frobnicate(3))"),
            Err(DslError::UnknownConstructor {
                offset: 7,
                name: "frobnicate".into()
            })
        );
    }

    #[test]
    fn parse_whitespace_insensitive() {
        assert_eq!(parse_spec(" torus ( 4 , 4 ) "), Ok(ConstructionSpec::Torus(4, 4)));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_spec(""), Err(DslError::UnexpectedEnd { .. })));
        assert!(matches!(parse_spec("complete(4,5)"), Err(DslError::ArityMismatch { .. })));
        assert!(matches!(parse_spec("chain(3,5)"), Err(DslError::RangeViolation { .. })));
        assert!(matches!(parse_spec("cmm(5,3)"), Err(DslError::RangeViolation { .. })));
        assert!(matches!(parse_spec("path(2)x"), Err(DslError::TrailingInput { .. })));
        assert!(matches!(parse_spec("complete(-1)"), Err(DslError::Unexpected { .. })));
        let deep = format!("{}path(2{}", "subdiv(".repeat(9), ")".repeat(10));
        assert!(matches!(parse_spec(&deep), Err(DslError::TooDeep { .. })));
    }

    #[test]
    fn pretty_round_trip() {
        for text in [
            "complete(5)",
            "cmm(7,1)",
            "subdiv(complete(4))",
            "subdiv(subdiv(path(3)))",
            "chain(4,6)",
            "torus(4,4)",
        ] {
            let spec = parse_spec(text).unwrap();
            assert_eq!(parse_spec(&spec.pretty()), Ok(spec));
        }
    }

    #[test]
    fn eval_examples() {
        let g = eval_spec(&parse_spec("subdiv(complete(4))").unwrap()).unwrap();
        assert_eq!(g.graph().n(), 10);
        let g = eval_spec(&parse_spec("cmm(7,1)").unwrap()).unwrap();
        assert_eq!(g.graph().m(), 20);
        let g = eval_spec(&parse_spec("torus(4,4)").unwrap()).unwrap();
        assert_eq!(g.graph().n(), 16);
        assert!(matches!(
            eval_spec(&parse_spec("subdiv(chain(4,6))").unwrap()).unwrap(),
            EvalOutput::Subdivision { .. }
        ));
    }
}
