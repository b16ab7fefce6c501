//! Propositional and ∀∃-quantified Boolean formulas.
//!
//! Assignments are bit-strings whose leftmost bit assigns variable 1. Truth
//! tables index assignments with variable 1 as the most significant bit, so
//! `table[i]` is the value on `BitString::from_index(i, arity)`.
//!
//! Formulas reach the tournament constructions through a [`Codec`], which
//! turns them into bit-strings and back. Decoding is total: every bit-string
//! either decodes or is reported as not a formula.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::Limits;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    Const(bool),
    /// 1-based variable index.
    Var(usize),
    Not(Box<Expr>),
    And(Box<Expr>, Box<Expr>),
    Or(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn var(i: usize) -> Expr {
        Expr::Var(i)
    }

    pub fn not(e: Expr) -> Expr {
        Expr::Not(Box::new(e))
    }

    pub fn and(a: Expr, b: Expr) -> Expr {
        Expr::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Expr, b: Expr) -> Expr {
        Expr::Or(Box::new(a), Box::new(b))
    }

    /// Largest variable index mentioned, 0 if none.
    pub fn max_var(&self) -> usize {
        match self {
            Expr::Const(_) => 0,
            Expr::Var(i) => *i,
            Expr::Not(e) => e.max_var(),
            Expr::And(a, b) | Expr::Or(a, b) => a.max_var().max(b.max_var()),
        }
    }

    fn min_var(&self) -> Option<usize> {
        match self {
            Expr::Const(_) => None,
            Expr::Var(i) => Some(*i),
            Expr::Not(e) => e.min_var(),
            Expr::And(a, b) | Expr::Or(a, b) => match (a.min_var(), b.min_var()) {
                (Some(x), Some(y)) => Some(x.min(y)),
                (x, y) => x.or(y),
            },
        }
    }

    /// Evaluates with `assignment[i - 1]` as the value of variable `i`.
    pub fn eval(&self, assignment: &[bool]) -> bool {
        match self {
            Expr::Const(b) => *b,
            Expr::Var(i) => assignment[*i - 1],
            Expr::Not(e) => !e.eval(assignment),
            Expr::And(a, b) => a.eval(assignment) && b.eval(assignment),
            Expr::Or(a, b) => a.eval(assignment) || b.eval(assignment),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Or(..) => 0,
            Expr::And(..) => 1,
            _ => 2,
        }
    }

    fn write_with(&self, f: &mut fmt::Formatter<'_>, names: &dyn Fn(usize) -> String) -> fmt::Result {
        let child = |f: &mut fmt::Formatter<'_>, e: &Expr, min: u8| -> fmt::Result {
            if e.precedence() < min {
                f.write_str("(")?;
                e.write_with(f, names)?;
                f.write_str(")")
            } else {
                e.write_with(f, names)
            }
        };
        match self {
            Expr::Const(b) => f.write_str(if *b { "1" } else { "0" }),
            Expr::Var(i) => f.write_str(&names(*i)),
            Expr::Not(e) => {
                f.write_str("!")?;
                child(f, e, 2)
            }
            Expr::And(a, b) => {
                child(f, a, 1)?;
                f.write_str(" & ")?;
                child(f, b, 2)
            }
            Expr::Or(a, b) => {
                child(f, a, 0)?;
                f.write_str(" | ")?;
                child(f, b, 1)
            }
        }
    }
}

/// A propositional formula over variables `1..=num_vars`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PropFormula {
    expr: Expr,
    num_vars: usize,
}

impl PropFormula {
    pub fn new(expr: Expr, num_vars: usize) -> Result<Self> {
        if num_vars == 0 {
            return Err(Error::invalid("a formula needs at least one variable"));
        }
        if expr.min_var() == Some(0) {
            return Err(Error::invalid("variable index 0"));
        }
        if expr.max_var() > num_vars {
            return Err(Error::invalid(format!(
                "variable x{} exceeds num_vars = {num_vars}",
                expr.max_var()
            )));
        }
        Ok(Self { expr, num_vars })
    }

    /// Builds the OR of the table's minterms (`0` for an all-false table).
    pub fn from_truth_table(table: &TruthTable) -> Result<Self> {
        let arity = table.arity();
        let mut acc: Option<Expr> = None;
        for index in (0..table.len()).filter(|&i| table.get(i)) {
            let assignment = BitString::from_index(index as u64, arity);
            let minterm = assignment
                .bits()
                .iter()
                .enumerate()
                .map(|(i, &b)| {
                    if b {
                        Expr::var(i + 1)
                    } else {
                        Expr::not(Expr::var(i + 1))
                    }
                })
                .reduce(Expr::and)
                .unwrap_or(Expr::Const(true));
            acc = Some(match acc {
                None => minterm,
                Some(prev) => Expr::or(prev, minterm),
            });
        }
        PropFormula::new(acc.unwrap_or(Expr::Const(false)), arity)
    }

    pub fn expr(&self) -> &Expr {
        &self.expr
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn eval(&self, assignment: &BitString) -> Result<bool> {
        if assignment.len() != self.num_vars {
            return Err(Error::LengthMismatch {
                expected: self.num_vars,
                found: assignment.len(),
            });
        }
        Ok(self.expr.eval(assignment.bits()))
    }

    pub fn negated(&self) -> PropFormula {
        PropFormula {
            expr: Expr::not(self.expr.clone()),
            num_vars: self.num_vars,
        }
    }
}

impl fmt::Display for PropFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.expr.max_var() != self.num_vars {
            write!(f, "vars={}:", self.num_vars)?;
        }
        self.expr.write_with(f, &|i| format!("x{i}"))
    }
}

impl FromStr for PropFormula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_formula(s)
    }
}

/// `∀x₁…∀xₙ ∃y₁…∃yₙ matrix(x, y)`; matrix variables `1..=n` are the `x`s and
/// `n+1..=2n` the `y`s.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ForallExistsFormula {
    n: usize,
    matrix: PropFormula,
}

impl ForallExistsFormula {
    pub fn new(n: usize, matrix: PropFormula) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("a ∀∃-formula needs n ≥ 1"));
        }
        if matrix.num_vars() != 2 * n {
            return Err(Error::invalid(format!(
                "matrix has {} variables, expected 2n = {}",
                matrix.num_vars(),
                2 * n
            )));
        }
        Ok(Self { n, matrix })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &PropFormula {
        &self.matrix
    }
}

impl fmt::Display for ForallExistsFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.n;
        write!(f, "fe:n={n}:")?;
        self.matrix.expr().write_with(f, &|i| {
            if i <= n {
                format!("x{i}")
            } else {
                format!("y{}", i - n)
            }
        })
    }
}

impl FromStr for ForallExistsFormula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_forall_exists(s)
    }
}

/// Either kind of formula, as accepted on the command line.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Plain(PropFormula),
    ForallExists(ForallExistsFormula),
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Plain(p) => p.fmt(f),
            Formula::ForallExists(fe) => fe.fmt(f),
        }
    }
}

impl FromStr for Formula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.trim_start().starts_with("fe:") {
            parse_forall_exists(s).map(Formula::ForallExists)
        } else {
            parse_formula(s).map(Formula::Plain)
        }
    }
}

/// A Boolean function given by its full value list.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruthTable {
    arity: usize,
    bits: Vec<bool>,
}

impl TruthTable {
    /// Wraps a bit-string whose length is `2^arity`.
    pub fn from_bits(bits: &BitString) -> Result<Self> {
        let len = bits.len();
        if !len.is_power_of_two() {
            return Err(Error::invalid(format!(
                "truth table length {len} is not a power of two"
            )));
        }
        Ok(Self {
            arity: len.trailing_zeros() as usize,
            bits: bits.bits().to_vec(),
        })
    }

    pub fn from_fn(arity: usize, f: impl Fn(&[bool]) -> bool) -> Self {
        let bits = (0..1u64 << arity)
            .map(|i| f(BitString::from_index(i, arity).bits()))
            .collect();
        Self { arity, bits }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn get(&self, index: usize) -> bool {
        self.bits[index]
    }

    pub fn eval(&self, assignment: &[bool]) -> bool {
        debug_assert_eq!(assignment.len(), self.arity);
        let index = assignment.iter().fold(0usize, |acc, &b| (acc << 1) | b as usize);
        self.bits[index]
    }

    /// Value on the concatenated assignment `x · y`, both given as indices.
    pub fn eval_split(&self, x: usize, y: usize, y_len: usize) -> bool {
        self.bits[(x << y_len) | y]
    }

    pub fn to_bitstring(&self) -> BitString {
        BitString::from_bits(self.bits.clone())
    }

    pub fn is_tautology(&self) -> bool {
        self.bits.iter().all(|&b| b)
    }

    pub fn is_satisfiable(&self) -> bool {
        self.bits.iter().any(|&b| b)
    }

    /// Whether every assignment to the first `n` variables extends to a
    /// satisfying assignment of the remaining `arity - n`.
    pub fn forall_exists(&self, n: usize) -> bool {
        let rest = self.arity - n;
        (0..1usize << n).all(|x| (0..1usize << rest).any(|y| self.eval_split(x, y, rest)))
    }
}

impl fmt::Display for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_bitstring().fmt(f)
    }
}

impl fmt::Debug for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruthTable({}: {})", self.arity, self)
    }
}

// ---------------------------------------------------------------------------
// Oracles
// ---------------------------------------------------------------------------

pub fn eval_formula(formula: &PropFormula, assignment: &BitString) -> Result<bool> {
    formula.eval(assignment)
}

pub fn truth_table_of(formula: &PropFormula, limits: &Limits) -> Result<TruthTable> {
    limits.check_vars(formula.num_vars())?;
    Ok(TruthTable::from_fn(formula.num_vars(), |a| formula.expr().eval(a)))
}

pub fn is_tautology(formula: &PropFormula, limits: &Limits) -> Result<bool> {
    Ok(truth_table_of(formula, limits)?.is_tautology())
}

pub fn is_satisfiable(formula: &PropFormula, limits: &Limits) -> Result<bool> {
    Ok(truth_table_of(formula, limits)?.is_satisfiable())
}

pub fn eval_forall_exists(formula: &ForallExistsFormula, limits: &Limits) -> Result<bool> {
    Ok(truth_table_of(formula.matrix(), limits)?.forall_exists(formula.n()))
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

/// Parses a propositional formula.
///
/// Accepted forms: an expression over `x<k>`, `0`, `1`, `!`, `&`, `|` and
/// parentheses; `vars=<N>:<expr>` to fix the variable count; `tt:<bits>` for a
/// truth-table literal.
pub fn parse_formula(text: &str) -> Result<PropFormula> {
    let mut p = Parser::new(text, None);
    p.skip_ws();
    if p.eat_str("tt:") {
        let (table, _) = p.table_literal()?;
        if table.arity() == 0 {
            return Err(p.error_at(p.offset(), "truth table needs at least two entries"));
        }
        return PropFormula::from_truth_table(&table);
    }
    let explicit = if p.eat_str("vars=") {
        let n = p.number()?;
        p.expect(':')?;
        Some(n)
    } else {
        None
    };
    let start = p.offset();
    let expr = p.expr()?;
    p.finish()?;
    let num_vars = match explicit {
        Some(n) if n < expr.max_var() => {
            return Err(p.error_at(start, &format!("formula mentions x{} but vars={n}", expr.max_var())))
        }
        Some(n) => n,
        None => expr.max_var(),
    };
    if num_vars == 0 {
        return Err(p.error_at(start, "formula mentions no variable"));
    }
    PropFormula::new(expr, num_vars)
}

/// Parses `fe:n=<n>:<matrix>` where the matrix is an expression over
/// `x1..xn`, `y1..yn` or a `tt:` literal of length `2^(2n)`.
pub fn parse_forall_exists(text: &str) -> Result<ForallExistsFormula> {
    let mut p = Parser::new(text, None);
    p.skip_ws();
    if !p.eat_str("fe:") {
        return Err(p.error_at(p.offset(), "expected `fe:`"));
    }
    if !p.eat_str("n=") {
        return Err(p.error_at(p.offset(), "expected `n=`"));
    }
    let n_at = p.offset();
    let n = p.number()?;
    if n == 0 {
        return Err(p.error_at(n_at, "n must be at least 1"));
    }
    p.expect(':')?;
    p.skip_ws();
    let matrix = if p.eat_str("tt:") {
        let at = p.offset();
        let (table, _) = p.table_literal()?;
        if table.arity() != 2 * n {
            return Err(p.error_at(
                at,
                &format!("matrix table needs 2^{} entries, found {}", 2 * n, table.len()),
            ));
        }
        PropFormula::from_truth_table(&table)?
    } else {
        p.matrix_n = Some(n);
        let expr = p.expr()?;
        p.finish()?;
        PropFormula::new(expr, 2 * n)?
    };
    ForallExistsFormula::new(n, matrix)
}

struct Parser<'a> {
    src: &'a str,
    chars: Vec<(usize, char)>,
    pos: usize,
    /// `Some(n)` inside an `fe:` matrix, where `y<k>` means variable `n + k`.
    matrix_n: Option<usize>,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, matrix_n: Option<usize>) -> Self {
        Self {
            src,
            chars: src.char_indices().collect(),
            pos: 0,
            matrix_n,
        }
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.src.len(), |&(o, _)| o)
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        self.pos += 1;
        c
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn eat_str(&mut self, s: &str) -> bool {
        let offset = self.offset();
        if self.src[offset..].starts_with(s) {
            self.pos += s.chars().count();
            true
        } else {
            false
        }
    }

    fn error_at(&self, offset: usize, message: &str) -> Error {
        Error::Syntax {
            offset,
            message: message.to_string(),
        }
    }

    fn unexpected(&self, wanted: &str) -> Error {
        let found = self.peek().map_or("end of input".to_string(), |c| format!("{c:?}"));
        self.error_at(self.offset(), &format!("expected {wanted}, found {found}"))
    }

    fn expect(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.unexpected(&format!("{c:?}")))
        }
    }

    fn finish(&mut self) -> Result<()> {
        self.skip_ws();
        match self.peek() {
            None => Ok(()),
            Some(_) => Err(self.unexpected("end of input")),
        }
    }

    fn number(&mut self) -> Result<usize> {
        let start = self.offset();
        let mut digits = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            digits.push(c);
            self.pos += 1;
        }
        if digits.is_empty() {
            return Err(self.unexpected("a number"));
        }
        digits.parse().map_err(|_| self.error_at(start, "number out of range"))
    }

    fn table_literal(&mut self) -> Result<(TruthTable, usize)> {
        let start = self.offset();
        let mut bits = BitString::new();
        while let Some(c) = self.peek() {
            match c {
                '0' => bits.push(false),
                '1' => bits.push(true),
                c if c.is_whitespace() => break,
                _ => return Err(self.unexpected("0 or 1")),
            }
            self.pos += 1;
        }
        self.finish()?;
        if bits.is_empty() {
            return Err(self.error_at(start, "empty truth table"));
        }
        let table = TruthTable::from_bits(&bits).map_err(|e| self.error_at(start, &e.to_string()))?;
        Ok((table, start))
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            self.skip_ws();
            if self.peek() == Some('|') {
                self.pos += 1;
                let rhs = self.term()?;
                lhs = Expr::or(lhs, rhs);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        loop {
            self.skip_ws();
            if self.peek() == Some('&') {
                self.pos += 1;
                let rhs = self.factor()?;
                lhs = Expr::and(lhs, rhs);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        self.skip_ws();
        let at = self.offset();
        match self.peek() {
            Some('!') => {
                self.pos += 1;
                Ok(Expr::not(self.factor()?))
            }
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some('0') => {
                self.pos += 1;
                Ok(Expr::Const(false))
            }
            Some('1') => {
                self.pos += 1;
                Ok(Expr::Const(true))
            }
            Some(c @ ('x' | 'y')) => {
                self.bump();
                if !self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    return Err(self.unexpected("a variable index"));
                }
                let k = self.number()?;
                if k == 0 {
                    return Err(self.error_at(at, "variable index 0"));
                }
                match (c, self.matrix_n) {
                    ('x', None) => Ok(Expr::Var(k)),
                    (_, None) => Err(self.error_at(at, "y-variables are only allowed in an fe: matrix")),
                    (_, Some(n)) if k > n => Err(self.error_at(at, &format!("{c}{k} is out of range for n={n}"))),
                    ('x', Some(_)) => Ok(Expr::Var(k)),
                    (_, Some(n)) => Ok(Expr::Var(n + k)),
                }
            }
            _ => Err(self.unexpected("a variable, constant, `!` or `(`")),
        }
    }
}

// ---------------------------------------------------------------------------
// Codecs
// ---------------------------------------------------------------------------

/// Bit-string encodings of formulas.
///
/// - `TtPlain`: a propositional formula on `n ≥ 1` variables as its `2^n`-bit
///   truth table.
/// - `TtFe`: a ∀∃-formula with `n ≥ 1` as the `2^(2n)`-bit table of its matrix.
/// - `Catalog`: one of sixteen fixed `n = 2` matrices, as its 4-bit index.
///
/// Each codec has at most one accepted encoding length per `n`, and the
/// encoding length grows with `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Codec {
    TtPlain,
    TtFe,
    Catalog,
}

impl Codec {
    /// Whether the codec carries ∀∃-formulas (as opposed to plain ones).
    pub fn is_forall_exists(self) -> bool {
        !matches!(self, Codec::TtPlain)
    }

    /// Encoding length of formulas with parameter `n`, if the codec admits
    /// that `n` at all.
    pub fn code_len(self, n: usize) -> Option<usize> {
        match self {
            Codec::TtPlain if n >= 1 => 1usize.checked_shl(n as u32),
            Codec::TtFe if n >= 1 => 1usize.checked_shl(2 * n as u32),
            Codec::Catalog if n == 2 => Some(4),
            _ => None,
        }
    }

    /// The admissible values of `n`, smallest first, bounded by `max_n`.
    pub fn admissible_n(self, max_n: usize) -> Vec<usize> {
        (1..=max_n).filter(|&n| self.code_len(n).is_some()).collect()
    }
}

impl fmt::Display for Codec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Codec::TtPlain => "ttplain",
            Codec::TtFe => "ttfe",
            Codec::Catalog => "catalog",
        })
    }
}

impl FromStr for Codec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ttplain" => Ok(Codec::TtPlain),
            "ttfe" => Ok(Codec::TtFe),
            "catalog" => Ok(Codec::Catalog),
            _ => Err(Error::invalid(format!("unknown codec `{s}`"))),
        }
    }
}

/// A decoded formula in the form the tournament constructions consume: its
/// encoding, its parameter `n` (variable count for plain formulas, universal
/// count for ∀∃-formulas) and its (matrix) truth table.
///
/// Ordering is the lexicographic order of encodings.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DecodedFormula {
    pub code: BitString,
    pub n: usize,
    pub table: Arc<TruthTable>,
}

impl PartialOrd for DecodedFormula {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for DecodedFormula {
    fn cmp(&self, other: &Self) -> Ordering {
        self.code.cmp(&other.code)
    }
}

impl DecodedFormula {
    /// Value on an assignment given as an index (plain formulas).
    pub fn eval_index(&self, assignment: usize) -> bool {
        self.table.get(assignment)
    }

    /// Matrix value on `x · y` (∀∃-formulas), both `n`-bit indices.
    pub fn eval_matrix(&self, x: usize, y: usize) -> bool {
        self.table.eval_split(x, y, self.n)
    }

    /// The truth value the reductions are meant to preserve: ∀∃-truth for
    /// ∀∃ codecs, otherwise left to the caller (tautology or satisfiability).
    pub fn forall_exists_value(&self) -> bool {
        self.table.forall_exists(self.n)
    }

    pub fn to_formula(&self, codec: Codec) -> Formula {
        let matrix = PropFormula::from_truth_table(&self.table).expect("table arity ≥ 1");
        if codec.is_forall_exists() {
            Formula::ForallExists(ForallExistsFormula::new(self.n, matrix).expect("valid matrix"))
        } else {
            Formula::Plain(matrix)
        }
    }
}

struct CatalogEntry {
    formula: ForallExistsFormula,
    table: Arc<TruthTable>,
}

fn catalog_entries() -> &'static [CatalogEntry] {
    static CATALOG: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    CATALOG.get_or_init(|| {
        let entries: Vec<CatalogEntry> = include_str!("../data/catalog.txt")
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|line| {
                let formula = parse_forall_exists(&format!("fe:n=2:{line}"))
                    .unwrap_or_else(|e| panic!("bad catalog line {line:?}: {e}"));
                let table = Arc::new(TruthTable::from_fn(4, |a| formula.matrix().expr().eval(a)));
                CatalogEntry { formula, table }
            })
            .collect();
        assert_eq!(entries.len(), 16, "catalog must have sixteen entries");
        entries
    })
}

/// The sixteen catalog matrices, in index order.
pub fn catalog() -> Vec<ForallExistsFormula> {
    catalog_entries().iter().map(|e| e.formula.clone()).collect()
}

pub fn encode_formula(formula: &Formula, codec: Codec, limits: &Limits) -> Result<BitString> {
    match (codec, formula) {
        (Codec::TtPlain, Formula::Plain(p)) => Ok(truth_table_of(p, limits)?.to_bitstring()),
        (Codec::TtFe, Formula::ForallExists(fe)) => Ok(truth_table_of(fe.matrix(), limits)?.to_bitstring()),
        (Codec::Catalog, Formula::ForallExists(fe)) => {
            if fe.n() != 2 {
                return Err(Error::NotInCatalog);
            }
            let table = truth_table_of(fe.matrix(), limits)?;
            catalog_entries()
                .iter()
                .position(|e| *e.table == table)
                .map(|i| BitString::from_index(i as u64, 4))
                .ok_or(Error::NotInCatalog)
        }
        (codec, _) => Err(Error::invalid(format!(
            "codec {codec} does not accept this kind of formula"
        ))),
    }
}

/// Decodes `bits`, returning `None` when they encode no formula.
pub fn decode_formula(bits: &BitString, codec: Codec) -> Option<Formula> {
    match codec {
        Codec::Catalog => decode_table(bits, codec)
            .map(|_| Formula::ForallExists(catalog_entries()[bits.to_index() as usize].formula.clone())),
        _ => decode_table(bits, codec).map(|d| d.to_formula(codec)),
    }
}

/// The table-level decoder behind [`decode_formula`].
pub fn decode_table(bits: &BitString, codec: Codec) -> Option<DecodedFormula> {
    let len = bits.len();
    if !len.is_power_of_two() {
        return None;
    }
    let log = len.trailing_zeros() as usize;
    let (n, table) = match codec {
        Codec::TtPlain if log >= 1 => (log, Arc::new(TruthTable::from_bits(bits).ok()?)),
        Codec::TtFe if log >= 2 && log.is_multiple_of(2) => (log / 2, Arc::new(TruthTable::from_bits(bits).ok()?)),
        Codec::Catalog if len == 4 => (2, catalog_entries()[bits.to_index() as usize].table.clone()),
        _ => return None,
    };
    Some(DecodedFormula {
        code: bits.clone(),
        n,
        table,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::bs;

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn parse_examples() {
        let f = parse_formula("x1 & !x2").unwrap();
        assert_eq!(f.expr(), &Expr::and(Expr::var(1), Expr::not(Expr::var(2))));
        assert_eq!(f.num_vars(), 2);

        let g = parse_formula("x1 | !x1").unwrap();
        assert_eq!(g.expr(), &Expr::or(Expr::var(1), Expr::not(Expr::var(1))));
        assert_eq!(g.num_vars(), 1);

        assert_eq!(
            parse_formula("x1 &"),
            Err(Error::Syntax {
                offset: 4,
                message: "expected a variable, constant, `!` or `(`, found end of input".into()
            })
        );
        assert!(matches!(parse_formula("x0"), Err(Error::Syntax { offset: 0, .. })));
        assert!(matches!(parse_formula("x1 & y1"), Err(Error::Syntax { offset: 5, .. })));
        assert!(matches!(parse_formula("(x1"), Err(Error::Syntax { offset: 3, .. })));
        assert!(matches!(parse_formula("x1 x2"), Err(Error::Syntax { offset: 3, .. })));
    }

    #[test]
    fn vars_override_and_precedence() {
        let f = parse_formula("vars=3: x1 | x2 & !x3").unwrap();
        assert_eq!(f.num_vars(), 3);
        assert_eq!(
            f.expr(),
            &Expr::or(Expr::var(1), Expr::and(Expr::var(2), Expr::not(Expr::var(3))))
        );
        assert_eq!(parse_formula("vars=4:x1").unwrap().num_vars(), 4);
        assert!(parse_formula("vars=1:x2").is_err());
        assert!(parse_formula("1").is_err());
        assert_eq!(parse_formula("vars=1:1").unwrap().num_vars(), 1);
    }

    #[test]
    fn display_reparses_structurally() {
        for text in [
            "x1 & !x2",
            "(x1 | x2) & x3",
            "x1 | (x2 | x3)",
            "!(x1 & !x1)",
            "vars=3:x1 | 0",
        ] {
            let f = parse_formula(text).unwrap();
            assert_eq!(parse_formula(&f.to_string()).unwrap(), f, "{text}");
        }
        let fe = parse_forall_exists("fe:n=2: x1 & y2 | !y1").unwrap();
        assert_eq!(fe.to_string(), "fe:n=2:x1 & y2 | !y1");
        assert_eq!(parse_forall_exists(&fe.to_string()).unwrap(), fe);
    }

    #[test]
    fn eval_examples() {
        let f = parse_formula("x1 & !x2").unwrap();
        assert!(f.eval(&bs("10")).unwrap());
        assert!(!f.eval(&bs("11")).unwrap());
        assert!(!parse_formula("x1 | x2").unwrap().eval(&bs("00")).unwrap());
        assert_eq!(f.eval(&bs("1")), Err(Error::LengthMismatch { expected: 2, found: 1 }));
    }

    #[test]
    fn forall_exists_examples() {
        let iff = parse_forall_exists("fe:n=1:!(x1 & !y1) & !(!x1 & y1)").unwrap();
        assert!(eval_forall_exists(&iff, &lim()).unwrap());
        let both = parse_forall_exists("fe:n=1:x1 & y1").unwrap();
        assert!(!eval_forall_exists(&both, &lim()).unwrap());
        let y_zero = parse_forall_exists("fe:n=2:tt:1000100010001000").unwrap();
        assert!(eval_forall_exists(&y_zero, &lim()).unwrap());
        assert!(parse_forall_exists("fe:n=2:tt:1001").is_err());
        assert!(parse_forall_exists("fe:n=1:x2").is_err());
        assert!(parse_forall_exists("fe:n=0:x1").is_err());
    }

    #[test]
    fn tautology_and_sat_examples() {
        let p = |s| parse_formula(s).unwrap();
        assert!(is_tautology(&p("x1 | !x1"), &lim()).unwrap());
        assert!(!is_tautology(&p("x1"), &lim()).unwrap());
        assert!(is_tautology(&p("!(x1 & !x1)"), &lim()).unwrap());
        assert!(!is_satisfiable(&p("x1 & !x1"), &lim()).unwrap());
        assert!(is_satisfiable(&p("x1"), &lim()).unwrap());
        let f = p("(x1 | x2) & !x1");
        assert!(is_satisfiable(&f, &lim()).unwrap());
        assert!(f.eval(&bs("01")).unwrap());
    }

    #[test]
    fn truth_table_examples() {
        let tt = |s| truth_table_of(&parse_formula(s).unwrap(), &lim()).unwrap().to_string();
        assert_eq!(tt("x1"), "01");
        assert_eq!(tt("x1 | !x1"), "11");
        assert_eq!(tt("x1 & x2 | !x1 & !x2"), "1001");
        let wide = parse_formula("vars=13:x1").unwrap();
        assert!(matches!(truth_table_of(&wide, &lim()), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn codec_examples() {
        let taut = Formula::Plain(parse_formula("x1 | !x1").unwrap());
        assert_eq!(encode_formula(&taut, Codec::TtPlain, &lim()).unwrap(), bs("11"));
        let iff = Formula::ForallExists(parse_forall_exists("fe:n=1:x1 & y1 | !x1 & !y1").unwrap());
        assert_eq!(encode_formula(&iff, Codec::TtFe, &lim()).unwrap(), bs("1001"));
        let entry0 = Formula::ForallExists(catalog()[0].clone());
        assert_eq!(encode_formula(&entry0, Codec::Catalog, &lim()).unwrap(), bs("0000"));
        assert_eq!(encode_formula(&iff, Codec::Catalog, &lim()), Err(Error::NotInCatalog));
        assert!(encode_formula(&taut, Codec::TtFe, &lim()).is_err());

        match decode_formula(&bs("1001"), Codec::TtFe) {
            Some(Formula::ForallExists(fe)) => {
                assert_eq!(fe.n(), 1);
                assert_eq!(truth_table_of(fe.matrix(), &lim()).unwrap().to_string(), "1001");
            }
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(decode_formula(&bs("101"), Codec::TtFe), None);
        assert_eq!(decode_formula(&bs("10"), Codec::TtFe), None);
        assert_eq!(decode_formula(&bs(""), Codec::TtPlain), None);
        assert_eq!(decode_formula(&bs("1"), Codec::TtPlain), None);
        match decode_formula(&bs("11"), Codec::TtPlain) {
            Some(Formula::Plain(p)) => assert!(is_tautology(&p, &lim()).unwrap()),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn catalog_has_both_truth_values() {
        let values: Vec<bool> = catalog()
            .iter()
            .map(|f| eval_forall_exists(f, &lim()).unwrap())
            .collect();
        assert!(values.iter().filter(|&&v| v).count() >= 4);
        assert!(values.iter().filter(|&&v| !v).count() >= 4);
        // Entries are pairwise distinct functions.
        let tables: std::collections::HashSet<_> = catalog_entries().iter().map(|e| e.table.clone()).collect();
        assert_eq!(tables.len(), 16);
    }

    /// Independent double loop: for each x-block, ask whether the matrix
    /// restricted to that block is satisfiable.
    fn forall_exists_by_blocks(fe: &ForallExistsFormula) -> bool {
        let n = fe.n();
        BitString::all_of_length(n)
            .all(|x| BitString::all_of_length(n).any(|y| fe.matrix().eval(&x.concat(&y)).unwrap()))
    }

    #[test]
    fn codec_roundtrip_and_oracle_cross_checks() {
        // Every table at n ≤ 3 for plain formulas, n = 1 for ∀∃ (16 tables).
        for n in 1..=3usize {
            for idx in 0..1u64 << (1 << n) {
                let bits = BitString::from_index(idx, 1 << n);
                let Some(Formula::Plain(p)) = decode_formula(&bits, Codec::TtPlain) else {
                    panic!("{bits} must decode")
                };
                assert_eq!(
                    encode_formula(&Formula::Plain(p.clone()), Codec::TtPlain, &lim()).unwrap(),
                    bits
                );
                for a in BitString::all_of_length(n) {
                    assert_eq!(p.eval(&a).unwrap(), bits.bits()[a.to_index() as usize]);
                }
                assert_eq!(
                    is_tautology(&p, &lim()).unwrap(),
                    !is_satisfiable(&p.negated(), &lim()).unwrap()
                );
            }
        }
        for n in 1..=2usize {
            let count = if n == 1 { 16u64 } else { 1 << 16 };
            for idx in 0..count {
                let bits = BitString::from_index(idx, 1 << (2 * n));
                let Some(Formula::ForallExists(fe)) = decode_formula(&bits, Codec::TtFe) else {
                    panic!("{bits} must decode")
                };
                if n == 1 || idx % 97 == 0 {
                    assert_eq!(
                        encode_formula(&Formula::ForallExists(fe.clone()), Codec::TtFe, &lim()).unwrap(),
                        bits
                    );
                    assert_eq!(eval_forall_exists(&fe, &lim()).unwrap(), forall_exists_by_blocks(&fe));
                }
            }
        }
        for fe in catalog() {
            let code = encode_formula(&Formula::ForallExists(fe.clone()), Codec::Catalog, &lim()).unwrap();
            assert_eq!(
                decode_formula(&code, Codec::Catalog),
                Some(Formula::ForallExists(fe.clone()))
            );
            assert_eq!(eval_forall_exists(&fe, &lim()).unwrap(), forall_exists_by_blocks(&fe));
        }
    }

    #[test]
    fn decode_is_total_on_short_strings() {
        for len in 0..=12 {
            for s in BitString::all_of_length(len) {
                for codec in [Codec::TtPlain, Codec::TtFe, Codec::Catalog] {
                    let decoded = decode_formula(&s, codec);
                    let expect = match codec {
                        Codec::TtPlain => len.is_power_of_two() && len >= 2,
                        Codec::TtFe => matches!(len, 4 | 16 | 64),
                        Codec::Catalog => len == 4,
                    };
                    assert_eq!(decoded.is_some(), expect, "{codec} {s}");
                }
            }
        }
    }
}
