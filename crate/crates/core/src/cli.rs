//! Line-oriented command language shared by the `qtopo` binary and tests.
//!
//! A line is `verb [key=value ...] [operand] [| operand ...]`. Options come
//! first; the first token that is not a known option of the verb starts the
//! operands, which are separated by a lone `|`.

use std::fmt;

use num_traits::One;

use crate::error::{Error, Result};
use crate::habiro::{factorial_series_string, parse_factorial_series, HabiroElement};
use crate::homcob::{HomologyCobordism, TwistWord};
use crate::jacobi::{weight_series, weight_system, DiagramAlgebra, DiagramCombination, JacobiDiagram, WeightData};
use crate::linalg::Rational;
use crate::poly::IntPoly;
use crate::symplectic::{
    moyal_product, parse_basis_label, BasisTree, PolynomialObservable, Shape, SymplecticLattice,
    TreeCombination, TreeReducer,
};
use crate::verify::{self, Suite};

pub const DEFAULT_LEVEL: usize = 5;
pub const DEFAULT_DEGREE: usize = 3;
pub const DEFAULT_T_ORDER: usize = 4;
pub const DEFAULT_MAX_GENUS: usize = 3;
pub const DEFAULT_SERIES_TRUNCATION: usize = 4;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    Text,
    /// `key=value` lines; a single-valued result prints the bare value.
    #[default]
    Machine,
}

#[derive(Clone, Copy, Debug)]
pub struct Settings {
    pub format: Format,
    pub max_genus: usize,
    pub verify: verify::Config,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            format: Format::Machine,
            max_genus: DEFAULT_MAX_GENUS,
            verify: verify::Config::default(),
        }
    }
}

/// `0`, `1` (`theta`) or `k` (`theta^k`) copies of the theta graph, or an
/// explicit diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DiagramExpr {
    Theta(usize),
    Explicit(JacobiDiagram),
}

impl DiagramExpr {
    pub fn diagram(&self) -> JacobiDiagram {
        match self {
            DiagramExpr::Theta(k) => JacobiDiagram::theta_power(*k),
            DiagramExpr::Explicit(d) => d.clone(),
        }
    }

    fn parse_named(s: &str) -> Option<DiagramExpr> {
        match s {
            "empty" => Some(DiagramExpr::Theta(0)),
            "theta" => Some(DiagramExpr::Theta(1)),
            _ => s
                .strip_prefix("theta^")
                .and_then(|k| k.parse().ok())
                .map(DiagramExpr::Theta),
        }
    }
}

impl fmt::Display for DiagramExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiagramExpr::Theta(0) => write!(f, "empty"),
            DiagramExpr::Theta(1) => write!(f, "theta"),
            DiagramExpr::Theta(k) => write!(f, "theta^{k}"),
            DiagramExpr::Explicit(d) => write!(f, "{d}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeTerm {
    pub coeff: Rational,
    pub labels: Vec<usize>,
    pub shape: Shape,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CobOperand {
    Cobordism(HomologyCobordism),
    Word(TwistWord),
}

impl CobOperand {
    pub fn genus(&self) -> usize {
        match self {
            CobOperand::Cobordism(c) => c.genus(),
            CobOperand::Word(w) => w.genus,
        }
    }

    pub fn cobordism(&self) -> Result<HomologyCobordism> {
        match self {
            CobOperand::Cobordism(c) => Ok(c.clone()),
            CobOperand::Word(w) => Ok(w.mapping_class()?.mapping_cylinder()),
        }
    }
}

impl fmt::Display for CobOperand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CobOperand::Cobordism(c) => write!(f, "{c}"),
            CobOperand::Word(w) => write!(f, "{w}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    HabiroEval { level: usize, n: usize, fs: Vec<IntPoly> },
    HabiroTaylor { level: usize, fs: Vec<IntPoly> },
    DiagramReduce { degree: usize, terms: Vec<(Rational, DiagramExpr)> },
    /// `diagram` set: the weight of one named diagram; otherwise the series.
    Weight {
        data: String,
        diagram: Option<DiagramExpr>,
        truncation: usize,
        terms: Vec<(Rational, DiagramExpr)>,
    },
    Grouplike { degree: usize, terms: Vec<(Rational, DiagramExpr)> },
    TreeBracket { genus: usize, degree: usize, left: Vec<TreeTerm>, right: Vec<TreeTerm> },
    Moyal { order: usize, left: PolynomialObservable, right: PolynomialObservable },
    CobCompose { operands: Vec<CobOperand> },
    CobCheck { operand: CobOperand },
    Verify { suite: Suite },
}

impl Command {
    pub fn verb(&self) -> &'static str {
        match self {
            Command::HabiroEval { .. } => "habiro-eval",
            Command::HabiroTaylor { .. } => "habiro-taylor",
            Command::DiagramReduce { .. } => "diagram-reduce",
            Command::Weight { .. } => "weight",
            Command::Grouplike { .. } => "grouplike",
            Command::TreeBracket { .. } => "tree-bracket",
            Command::Moyal { .. } => "moyal",
            Command::CobCompose { .. } => "cob-compose",
            Command::CobCheck { .. } => "cob-check",
            Command::Verify { .. } => "verify",
        }
    }
}

pub const VERBS: [&str; 10] = [
    "habiro-eval",
    "habiro-taylor",
    "diagram-reduce",
    "weight",
    "grouplike",
    "tree-bracket",
    "moyal",
    "cob-compose",
    "cob-check",
    "verify",
];

fn diagram_terms_string(terms: &[(Rational, DiagramExpr)]) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    terms
        .iter()
        .map(|(c, d)| format!("{c}*{d}"))
        .collect::<Vec<_>>()
        .join(" + ")
}

fn tree_terms_string(genus: usize, terms: &[TreeTerm]) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    terms
        .iter()
        .map(|t| {
            let labels: Vec<String> = t
                .labels
                .iter()
                .map(|&i| crate::symplectic::basis_label(genus, i))
                .collect();
            format!("{}*tree leaves=({}) shape={}", t.coeff, labels.join(","), t.shape)
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

impl fmt::Display for Command {
    /// Canonical text with every option spelled out.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.verb())?;
        match self {
            Command::HabiroEval { level, n, fs } => {
                write!(f, " level={level} n={n} fs={}", factorial_series_string(fs))
            }
            Command::HabiroTaylor { level, fs } => {
                write!(f, " level={level} fs={}", factorial_series_string(fs))
            }
            Command::DiagramReduce { degree, terms } => {
                write!(f, " degree={degree} {}", diagram_terms_string(terms))
            }
            Command::Weight {
                data,
                diagram,
                truncation,
                terms,
            } => match diagram {
                Some(d) => write!(f, " data={data} diagram={d}"),
                None => write!(
                    f,
                    " data={data} truncation={truncation} {}",
                    diagram_terms_string(terms)
                ),
            },
            Command::Grouplike { degree, terms } => {
                write!(f, " degree={degree} {}", diagram_terms_string(terms))
            }
            Command::TreeBracket {
                genus,
                degree,
                left,
                right,
            } => write!(
                f,
                " g={genus} degree={degree} {} | {}",
                tree_terms_string(*genus, left),
                tree_terms_string(*genus, right)
            ),
            Command::Moyal { order, left, right } => write!(f, " order={order} {left} | {right}"),
            Command::CobCompose { operands } => {
                let parts: Vec<String> = operands.iter().map(ToString::to_string).collect();
                write!(f, " {}", parts.join(" | "))
            }
            Command::CobCheck { operand } => write!(f, " {operand}"),
            Command::Verify { suite } => write!(f, " {suite}"),
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct Token<'a> {
    text: &'a str,
    column: usize,
}

struct Line<'a> {
    number: usize,
    tokens: Vec<Token<'a>>,
    end_column: usize,
}

impl<'a> Line<'a> {
    fn new(text: &'a str, number: usize) -> Self {
        let mut tokens = Vec::new();
        let mut start = None;
        for (i, ch) in text.char_indices() {
            match (ch.is_whitespace(), start) {
                (true, Some(s)) => {
                    tokens.push(Token {
                        text: &text[s..i],
                        column: text[..s].chars().count() + 1,
                    });
                    start = None;
                }
                (false, None) => start = Some(i),
                _ => {}
            }
        }
        if let Some(s) = start {
            tokens.push(Token {
                text: &text[s..],
                column: text[..s].chars().count() + 1,
            });
        }
        Line {
            number,
            tokens,
            end_column: text.chars().count() + 1,
        }
    }

    fn syntax(&self, column: usize, message: impl Into<String>) -> Error {
        Error::Syntax {
            line: self.number,
            column,
            message: message.into(),
        }
    }
}

/// Options of one verb, then its operands.
struct Parts<'a> {
    options: Vec<(Token<'a>, &'a str, &'a str)>,
    operands: Vec<Vec<Token<'a>>>,
}

impl<'a> Parts<'a> {
    fn take(&mut self, key: &str) -> Option<(Token<'a>, &'a str)> {
        let i = self.options.iter().position(|(_, k, _)| *k == key)?;
        let (tok, _, v) = self.options.remove(i);
        Some((tok, v))
    }
}

fn split<'a>(line: &Line<'a>, keys: &[&str]) -> Result<Parts<'a>> {
    let mut options = Vec::new();
    let mut rest = &line.tokens[1..];
    while let Some(tok) = rest.first() {
        let Some((k, v)) = tok.text.split_once('=') else { break };
        if !keys.contains(&k) {
            break;
        }
        if options.iter().any(|(_, seen, _)| *seen == k) {
            return Err(line.syntax(tok.column, format!("option `{k}` given twice")));
        }
        options.push((*tok, k, v));
        rest = &rest[1..];
    }
    let mut operands = Vec::new();
    if !rest.is_empty() {
        operands.push(Vec::new());
        for tok in rest {
            if tok.text == "|" {
                operands.push(Vec::new());
            } else {
                operands.last_mut().expect("pushed above").push(*tok);
            }
        }
    }
    for op in &operands {
        if op.is_empty() {
            return Err(line.syntax(line.end_column, "empty operand around `|`"));
        }
    }
    Ok(Parts { options, operands })
}

fn parse_number<T: std::str::FromStr>(line: &Line, tok: Token, key: &str, v: &str) -> Result<T> {
    v.parse()
        .map_err(|_| line.syntax(tok.column + key.len() + 1, format!("`{key}` expects a number, found `{v}`")))
}

fn optional<T: std::str::FromStr>(line: &Line, parts: &mut Parts, key: &str, default: T) -> Result<T> {
    match parts.take(key) {
        Some((tok, v)) => parse_number(line, tok, key, v),
        None => Ok(default),
    }
}

fn required<'a>(line: &Line, parts: &mut Parts<'a>, key: &str) -> Result<(Token<'a>, &'a str)> {
    let column = line.tokens[0].column;
    parts
        .take(key)
        .ok_or_else(|| line.syntax(column, format!("`{}` requires `{key}=`", line.tokens[0].text)))
}

fn operand_count(line: &Line, parts: &Parts, min: usize, max: usize) -> Result<()> {
    let n = parts.operands.len();
    if n < min || n > max {
        let column = parts
            .operands
            .get(max)
            .and_then(|o| o.first())
            .map_or(line.end_column, |t| t.column);
        let want = if min == max {
            format!("{min}")
        } else if max == usize::MAX {
            format!("at least {min}")
        } else {
            format!("{min} to {max}")
        };
        return Err(line.syntax(column, format!("expected {want} operand(s), found {n}")));
    }
    Ok(())
}

fn joined(tokens: &[Token]) -> String {
    tokens.iter().map(|t| t.text).collect::<Vec<_>>().join(" ")
}

/// Splits an operand into `+`-separated terms.
fn terms<'a>(tokens: &[Token<'a>]) -> Vec<Vec<Token<'a>>> {
    let mut out = vec![Vec::new()];
    for tok in tokens {
        if tok.text == "+" {
            out.push(Vec::new());
        } else {
            out.last_mut().expect("nonempty").push(*tok);
        }
    }
    out
}

/// `coef*rest` or `rest`; returns the coefficient and the token with the
/// prefix removed.
fn coefficient<'a>(line: &Line, tok: Token<'a>) -> Result<(Rational, Token<'a>)> {
    match tok.text.split_once('*') {
        Some((c, rest)) => {
            let coeff = c
                .parse::<Rational>()
                .map_err(|_| line.syntax(tok.column, format!("bad coefficient `{c}`")))?;
            Ok((
                coeff,
                Token {
                    text: rest,
                    column: tok.column + c.chars().count() + 1,
                },
            ))
        }
        None => Ok((Rational::one(), tok)),
    }
}

fn diagram_terms(line: &Line, tokens: &[Token]) -> Result<Vec<(Rational, DiagramExpr)>> {
    if tokens.len() == 1 && tokens[0].text == "0" {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for term in terms(tokens) {
        let Some(&first) = term.first() else {
            return Err(line.syntax(line.end_column, "empty term"));
        };
        let (coeff, head) = coefficient(line, first)?;
        let expr = if head.text == "diagram" {
            let mut text = head.text.to_string();
            for t in &term[1..] {
                text.push(' ');
                text.push_str(t.text);
            }
            let d: JacobiDiagram = text
                .parse()
                .map_err(|e: Error| line.syntax(head.column, e.to_string()))?;
            DiagramExpr::Explicit(d)
        } else {
            if term.len() > 1 {
                return Err(line.syntax(term[1].column, format!("unexpected `{}`", term[1].text)));
            }
            DiagramExpr::parse_named(head.text)
                .ok_or_else(|| line.syntax(head.column, format!("unknown diagram `{}`", head.text)))?
        };
        out.push((coeff, expr));
    }
    Ok(out)
}

fn tree_terms(line: &Line, genus: usize, tokens: &[Token]) -> Result<Vec<TreeTerm>> {
    if tokens.len() == 1 && tokens[0].text == "0" {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for term in terms(tokens) {
        let [first, leaves, shape] = term.as_slice() else {
            let column = term.first().map_or(line.end_column, |t| t.column);
            return Err(line.syntax(column, "expected `<coef>*tree leaves=(...) shape=(...)`"));
        };
        let (coeff, head) = coefficient(line, *first)?;
        if head.text != "tree" {
            return Err(line.syntax(head.column, format!("expected `tree`, found `{}`", head.text)));
        }
        let list = leaves
            .text
            .strip_prefix("leaves=(")
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| line.syntax(leaves.column, "expected `leaves=(...)`"))?;
        let labels = list
            .split(',')
            .map(|l| {
                parse_basis_label(genus, l).ok_or_else(|| {
                    Error::Semantic(format!("leaf label `{l}` is not a basis class of genus {genus}"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let s = shape
            .text
            .strip_prefix("shape=")
            .ok_or_else(|| line.syntax(shape.column, "expected `shape=...`"))?;
        let s = Shape::parse(s).map_err(|e| line.syntax(shape.column, e.to_string()))?;
        BasisTree::from_shape(&s, &labels).map_err(|e| line.syntax(shape.column, e.to_string()))?;
        out.push(TreeTerm {
            coeff,
            labels,
            shape: s,
        });
    }
    Ok(out)
}

fn cob_operand(line: &Line, tokens: &[Token]) -> Result<CobOperand> {
    let text = joined(tokens);
    let column = tokens[0].column;
    let located = |e: Error| line.syntax(column, e.to_string());
    match tokens[0].text {
        "cobordism" => Ok(CobOperand::Cobordism(text.parse().map_err(located)?)),
        "word" => Ok(CobOperand::Word(text.parse().map_err(located)?)),
        other => Err(line.syntax(column, format!("expected `cobordism` or `word`, found `{other}`"))),
    }
}

fn check_genus(genus: usize, settings: &Settings) -> Result<()> {
    if genus > settings.max_genus {
        return Err(Error::Semantic(format!(
            "genus {genus} exceeds the configured maximum {}",
            settings.max_genus
        )));
    }
    Ok(())
}

/// Parses one line (1-based `number` for error positions).
pub fn parse_line(text: &str, number: usize, settings: &Settings) -> Result<Command> {
    let line = Line::new(text, number);
    let Some(verb) = line.tokens.first() else {
        return Err(line.syntax(1, "empty command"));
    };
    let cmd = match verb.text {
        "habiro-eval" | "habiro-taylor" => {
            let eval = verb.text == "habiro-eval";
            let mut p = split(&line, &["level", "n", "fs"])?;
            operand_count(&line, &p, 0, 0)?;
            let level = optional(&line, &mut p, "level", DEFAULT_LEVEL)?;
            let (fs_tok, fs) = required(&line, &mut p, "fs")?;
            let fs = parse_factorial_series(fs).map_err(|e| line.syntax(fs_tok.column + 3, e.to_string()))?;
            if eval {
                let (tok, v) = required(&line, &mut p, "n")?;
                let n = parse_number(&line, tok, "n", v)?;
                Command::HabiroEval { level, n, fs }
            } else {
                if let Some((tok, _)) = p.take("n") {
                    return Err(line.syntax(tok.column, "`habiro-taylor` takes no `n=`"));
                }
                Command::HabiroTaylor { level, fs }
            }
        }
        "diagram-reduce" | "grouplike" => {
            let mut p = split(&line, &["degree"])?;
            operand_count(&line, &p, 1, 1)?;
            let degree = optional(&line, &mut p, "degree", DEFAULT_DEGREE)?;
            let terms = diagram_terms(&line, &p.operands[0])?;
            if verb.text == "grouplike" {
                Command::Grouplike { degree, terms }
            } else {
                Command::DiagramReduce { degree, terms }
            }
        }
        "weight" => {
            let mut p = split(&line, &["data", "diagram", "truncation"])?;
            let (_, data) = required(&line, &mut p, "data")?;
            let diagram = match p.take("diagram") {
                Some((tok, v)) => Some(
                    DiagramExpr::parse_named(v)
                        .ok_or_else(|| line.syntax(tok.column + 8, format!("unknown diagram `{v}`")))?,
                ),
                None => None,
            };
            let truncation = optional(&line, &mut p, "truncation", DEFAULT_SERIES_TRUNCATION)?;
            let terms = if diagram.is_some() {
                operand_count(&line, &p, 0, 0)?;
                Vec::new()
            } else {
                operand_count(&line, &p, 1, 1)?;
                diagram_terms(&line, &p.operands[0])?
            };
            if WeightData::by_name(data).is_none() {
                return Err(Error::Semantic(format!("unknown weight data `{data}`")));
            }
            Command::Weight {
                data: data.to_string(),
                diagram,
                truncation,
                terms,
            }
        }
        "tree-bracket" => {
            let mut p = split(&line, &["g", "degree"])?;
            operand_count(&line, &p, 2, 2)?;
            let (tok, v) = required(&line, &mut p, "g")?;
            let genus = parse_number(&line, tok, "g", v)?;
            check_genus(genus, settings)?;
            let degree = optional(&line, &mut p, "degree", DEFAULT_DEGREE)?;
            let left = tree_terms(&line, genus, &p.operands[0])?;
            let right = tree_terms(&line, genus, &p.operands[1])?;
            Command::TreeBracket {
                genus,
                degree,
                left,
                right,
            }
        }
        "moyal" => {
            let mut p = split(&line, &["order"])?;
            operand_count(&line, &p, 2, 2)?;
            let order = optional(&line, &mut p, "order", DEFAULT_T_ORDER)?;
            let poly = |ops: &[Token]| {
                PolynomialObservable::parse_with_order(&joined(ops), order)
                    .map_err(|e| line.syntax(ops[0].column, e.to_string()))
            };
            let (left, right) = (poly(&p.operands[0])?, poly(&p.operands[1])?);
            if left.lattice() != right.lattice() {
                return Err(Error::Semantic(format!(
                    "moyal operands have genus {} and {}",
                    left.lattice().genus(),
                    right.lattice().genus()
                )));
            }
            check_genus(left.lattice().genus(), settings)?;
            Command::Moyal { order, left, right }
        }
        "cob-compose" | "cob-check" => {
            let p = split(&line, &[])?;
            let compose = verb.text == "cob-compose";
            if compose {
                operand_count(&line, &p, 1, usize::MAX)?;
            } else {
                operand_count(&line, &p, 1, 1)?;
            }
            let operands = p
                .operands
                .iter()
                .map(|o| cob_operand(&line, o))
                .collect::<Result<Vec<_>>>()?;
            for o in &operands {
                check_genus(o.genus(), settings)?;
                if o.genus() != operands[0].genus() {
                    return Err(Error::Semantic(format!(
                        "cobordism operands have genus {} and {}",
                        operands[0].genus(),
                        o.genus()
                    )));
                }
            }
            if compose {
                Command::CobCompose { operands }
            } else {
                Command::CobCheck {
                    operand: operands.into_iter().next().expect("one operand"),
                }
            }
        }
        "verify" => {
            let p = split(&line, &[])?;
            operand_count(&line, &p, 1, 1)?;
            let tok = p.operands[0][0];
            if p.operands[0].len() > 1 {
                return Err(line.syntax(p.operands[0][1].column, "`verify` takes one suite name"));
            }
            let suite = tok
                .text
                .parse()
                .map_err(|_| line.syntax(tok.column, format!("unknown suite `{}`", tok.text)))?;
            Command::Verify { suite }
        }
        other => {
            return Err(line.syntax(
                verb.column,
                format!("unknown verb `{other}`; expected one of {}", VERBS.join(", ")),
            ))
        }
    };
    Ok(cmd)
}

/// Parses every non-blank line not starting with `#`.
pub fn parse_script(text: &str, settings: &Settings) -> Result<Vec<Command>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|(i, l)| parse_line(l, i + 1, settings))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub lines: Vec<String>,
    /// False only when a verification suite reports a failing check.
    pub success: bool,
}

impl Outcome {
    fn single(line: String) -> Self {
        Outcome {
            lines: vec![line],
            success: true,
        }
    }
}

fn combination(terms: &[(Rational, DiagramExpr)], level: usize) -> Result<DiagramCombination> {
    let mut c = DiagramCombination::zero(level);
    for (coeff, d) in terms {
        c.try_add_term(coeff.clone(), &d.diagram())?;
    }
    Ok(c)
}

fn tree_combination(genus: usize, terms: &[TreeTerm]) -> Result<TreeCombination> {
    let lattice = SymplecticLattice::new(genus);
    let mut c = TreeCombination::zero(lattice);
    for t in terms {
        c.add_tree(t.coeff.clone(), &BasisTree::from_shape(&t.shape, &t.labels)?);
    }
    Ok(c)
}

fn field(format: Format, key: &str, value: impl fmt::Display) -> String {
    match format {
        Format::Machine => value.to_string(),
        Format::Text => format!("{key}: {value}"),
    }
}

pub fn execute(cmd: &Command, settings: &Settings) -> Result<Outcome> {
    let fmt = settings.format;
    Ok(match cmd {
        Command::HabiroEval { level, n, fs } => {
            let x = HabiroElement::from_factorial_series(fs, *level)?.evaluate_at_root(*n)?;
            Outcome::single(field(fmt, &format!("ev at primitive root of order {n}"), x))
        }
        Command::HabiroTaylor { level, fs } => {
            let t = HabiroElement::from_factorial_series(fs, *level)?.taylor_at_one();
            Outcome::single(field(fmt, "coefficients of (1-q)^k", t))
        }
        Command::DiagramReduce { degree, terms } => {
            let c = combination(terms, *degree)?;
            let coords = DiagramAlgebra::new(*degree).reduce(&c)?;
            let mut lines: Vec<String> = coords
                .iter()
                .map(|(d, v)| {
                    let v: Vec<String> = v.iter().map(ToString::to_string).collect();
                    match fmt {
                        Format::Machine => format!("d{d}={}", v.join(",")),
                        Format::Text => format!("degree {d} coordinates: {}", v.join(", ")),
                    }
                })
                .collect();
            if lines.is_empty() {
                lines.push(field(fmt, "class", "0"));
            } else if fmt == Format::Machine {
                lines = vec![lines.join(" ")];
            }
            Outcome {
                lines,
                success: true,
            }
        }
        Command::Weight {
            data,
            diagram,
            truncation,
            terms,
        } => {
            let w = WeightData::by_name(data)
                .ok_or_else(|| Error::Semantic(format!("unknown weight data `{data}`")))?;
            match diagram {
                Some(d) => Outcome::single(field(fmt, "weight", weight_system(&w, &d.diagram()))),
                None => {
                    let level = terms.iter().map(|(_, d)| d.diagram().degree()).max().unwrap_or(0);
                    let c = combination(terms, level)?;
                    Outcome::single(field(fmt, "series in h", weight_series(&w, &c, *truncation)))
                }
            }
        }
        Command::Grouplike { degree, terms } => {
            let c = combination(terms, *degree)?;
            let g = DiagramAlgebra::new(*degree).is_group_like(&c, *degree)?;
            Outcome::single(field(fmt, "group-like", g))
        }
        Command::TreeBracket {
            genus,
            degree,
            left,
            right,
        } => {
            let reducer = TreeReducer::with_max_degree(SymplecticLattice::new(*genus), *degree);
            let b = reducer.bracket(&tree_combination(*genus, left)?, &tree_combination(*genus, right)?)?;
            Outcome::single(field(fmt, "bracket", b))
        }
        Command::Moyal { order, left, right } => {
            Outcome::single(field(fmt, "product", moyal_product(left, right, *order)?))
        }
        Command::CobCompose { operands } => {
            let mut acc = operands[0].cobordism()?;
            for o in &operands[1..] {
                acc = acc.compose(&o.cobordism()?)?;
            }
            Outcome::single(field(fmt, "composite", acc.simplified()))
        }
        Command::CobCheck { operand } => {
            let c = operand.cobordism()?;
            let mut facts = vec![
                ("homology_cobordism", c.is_homology_cobordism()),
                ("homology_cylinder", c.is_homology_cylinder()),
            ];
            if let CobOperand::Word(w) = operand {
                facts.push(("torelli", w.mapping_class()?.is_torelli()));
            }
            let lines = match fmt {
                Format::Machine => vec![facts
                    .iter()
                    .map(|(k, v)| format!("{k}={v}"))
                    .collect::<Vec<_>>()
                    .join(" ")],
                Format::Text => facts.iter().map(|(k, v)| format!("{k}: {v}")).collect(),
            };
            Outcome {
                lines,
                success: true,
            }
        }
        Command::Verify { suite } => {
            let report = verify::run(*suite, &settings.verify)?;
            let mut lines = Vec::new();
            for c in &report.checks {
                let status = if c.passed { "pass" } else { "fail" };
                let mut l = match fmt {
                    Format::Machine => format!("{}={status}", c.name),
                    Format::Text => format!("{status}: {}", c.name),
                };
                if let Some(x) = &c.counterexample {
                    l.push_str(&format!(" counterexample={x}"));
                }
                lines.push(l);
            }
            let all = if report.passed() { "pass" } else { "fail" };
            lines.push(match fmt {
                Format::Machine => format!("{suite}={all}"),
                Format::Text => format!("suite {suite}: {all}"),
            });
            Outcome {
                lines,
                success: report.passed(),
            }
        }
    })
}

/// Exit status for a script run: 0 ok, 1 verification failure, 2 usage,
/// parse or evaluation error.
pub fn exit_code(result: &Result<Outcome>) -> i32 {
    match result {
        Ok(o) if o.success => 0,
        Ok(_) => 1,
        Err(_) => 2,
    }
}

/// Parses and executes a script, stopping at the first error.
pub fn run_script(text: &str, settings: &Settings, out: &mut dyn std::io::Write) -> Result<Outcome> {
    let commands = parse_script(text, settings)?;
    let mut all = Outcome {
        lines: Vec::new(),
        success: true,
    };
    for cmd in &commands {
        let o = execute(cmd, settings)?;
        for l in &o.lines {
            writeln!(out, "{l}").map_err(|e| Error::InvalidArgument(format!("cannot write output: {e}")))?;
        }
        all.success &= o.success;
        all.lines.extend(o.lines);
    }
    Ok(all)
}

impl Default for Outcome {
    fn default() -> Self {
        Outcome {
            lines: Vec::new(),
            success: true,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(line: &str) -> Vec<String> {
        let s = Settings::default();
        execute(&parse_line(line, 1, &s).unwrap(), &s).unwrap().lines
    }

    #[test]
    fn worked_lines() {
        assert_eq!(run("habiro-eval level=5 n=3 fs=[1]"), ["1"]);
        assert_eq!(run("weight data=epsilon diagram=theta"), ["6"]);
        assert_eq!(
            run("cob-check word g=1 twists=a1"),
            ["homology_cobordism=true homology_cylinder=false torelli=false"]
        );
        assert_eq!(run("habiro-taylor level=5 fs=[0,1]"), ["1,-1,0,0,0,0"]);
    }

    #[test]
    fn errors_carry_positions() {
        let s = Settings::default();
        match parse_line("habiro-eval level=x n=3 fs=[1]", 4, &s) {
            Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (4, 19)),
            other => panic!("{other:?}"),
        }
        match parse_line("frobnicate", 1, &s) {
            Err(Error::Syntax { column, .. }) => assert_eq!(column, 1),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_line("cob-compose word g=1 twists=a1 | word g=2 twists=b2", 1, &s),
            Err(Error::Semantic(_))
        ));
        assert!(matches!(
            parse_line("moyal poly g=4 terms=1 | poly g=4 terms=1", 1, &s),
            Err(Error::Semantic(_))
        ));
    }

    #[test]
    fn round_trip() {
        let s = Settings::default();
        for line in [
            "habiro-eval n=3 fs=[1;0,1]",
            "habiro-taylor level=4 fs=[0;1]",
            "diagram-reduce 1*theta + -2*diagram v=2 rot=(0,1,2)(3,4,5) edges=(0-3)(1-5)(2-4)",
            "weight data=sl2 truncation=3 theta + 1/2*theta^2",
            "grouplike degree=2 empty + theta + 1/2*theta^2",
            "tree-bracket g=1 1*tree leaves=(a1,a1) shape=(0,1) | tree leaves=(b1,b1) shape=(0,1)",
            "moyal order=3 poly g=1 terms=1*x[a1]^2 | poly g=1 terms=1*x[b1]^2 + 2*t",
            "cob-compose word g=1 twists=a1,-b1 | cobordism g=1 rel=[] mplus=[1,0;0,1] mminus=[1,0;0,1]",
            "cob-check word g=2 twists=",
            "verify smith",
        ] {
            let a = parse_line(line, 1, &s).unwrap();
            let b = parse_line(&a.to_string(), 1, &s).unwrap();
            assert_eq!(a, b, "{line}");
        }
    }
}
