//! Type A staircase tableaux.
//!
//! A staircase tableau of size n is a triangular array with cells `(i, j)`
//! for `1 <= j <= i <= n` (row i counted from the bottom, column j from the
//! left). Cells may hold one of the Greek labels α, β, γ, δ subject to:
//!
//! * every diagonal cell `(i, i)` is labeled,
//! * every cell strictly above an α or γ (same column) is empty,
//! * every cell strictly left of a β or δ (same row) is empty.
//!
//! Each empty cell of a valid tableau gets a unique q or u: let `r` be the
//! nearest label to its right in its row and `b` the nearest label below in
//! its column (both exist because diagonals are labeled). The cell gets `q`
//! when `r = δ`, or when `r ∈ {α, γ}` and `b ∈ {β, γ}`; otherwise it gets
//! `u`. The weight of the tableau is the product of all n(n+1)/2 symbols of
//! the filled tableau — a single monomial.
//!
//! The module also implements the insertion bijection: a size-n tableau plus
//! one of the `4(n+1)` insertion events determines a size-(n+1) tableau, and
//! every size-(n+1) tableau arises exactly once this way. Iterating the
//! inverse yields colored inversion tables.

use std::fmt;

use num::BigRational;
use num::One;
use serde_json::{json, Value};

use crate::poly::{Monomial, Polynomial, Var};
use crate::state::{Letter, State};
use crate::ParseError;

/// A Greek cell label.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Label {
    Alpha,
    Beta,
    Gamma,
    Delta,
}

impl Label {
    pub const ALL: [Label; 4] = [Label::Alpha, Label::Beta, Label::Gamma, Label::Delta];

    pub fn to_char(self) -> char {
        match self {
            Label::Alpha => 'a',
            Label::Beta => 'b',
            Label::Gamma => 'g',
            Label::Delta => 'd',
        }
    }

    pub fn from_char(c: char) -> Option<Label> {
        match c {
            'a' => Some(Label::Alpha),
            'b' => Some(Label::Beta),
            'g' => Some(Label::Gamma),
            'd' => Some(Label::Delta),
            _ => None,
        }
    }

    pub fn is_alpha_gamma(self) -> bool {
        matches!(self, Label::Alpha | Label::Gamma)
    }

    pub fn is_beta_delta(self) -> bool {
        matches!(self, Label::Beta | Label::Delta)
    }

    pub fn var(self) -> Var {
        match self {
            Label::Alpha => Var::Alpha,
            Label::Beta => Var::Beta,
            Label::Gamma => Var::Gamma,
            Label::Delta => Var::Delta,
        }
    }

    /// Diagonal read-off: α and δ mark a filled site, β and γ an empty one.
    pub fn state_letter(self) -> Letter {
        match self {
            Label::Alpha | Label::Delta => Letter::Black,
            Label::Beta | Label::Gamma => Letter::White,
        }
    }

    /// Mirror image used when reflecting half tableaux: α↔δ, β↔γ.
    pub fn mirror(self) -> Label {
        match self {
            Label::Alpha => Label::Delta,
            Label::Delta => Label::Alpha,
            Label::Beta => Label::Gamma,
            Label::Gamma => Label::Beta,
        }
    }
}

/// A subset of the four labels, used to filter enumeration.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct LabelSet(u8);

impl LabelSet {
    pub fn all() -> LabelSet {
        LabelSet(0b1111)
    }

    pub fn from_labels(labels: &[Label]) -> LabelSet {
        LabelSet(labels.iter().fold(0, |m, l| m | 1 << *l as u8))
    }

    /// Parses a string of label characters such as `"ad"`.
    pub fn parse(s: &str) -> Result<LabelSet, ParseError> {
        let labels = s
            .chars()
            .map(|c| Label::from_char(c).ok_or_else(|| ParseError(format!("bad label {c:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(LabelSet::from_labels(&labels))
    }

    pub fn contains(self, l: Label) -> bool {
        self.0 & (1 << l as u8) != 0
    }
}

/// Errors from tableau operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TableauError {
    #[error("invalid tableau: {}", .0.join("; "))]
    Invalid(Vec<String>),
    #[error("invalid insertion event: {0}")]
    InvalidEvent(String),
    #[error("elementary move obstructed at {0}")]
    MoveObstructed(String),
    #[error("not an insertion image: {0}")]
    NotInImage(String),
    #[error("malformed inversion table: {0}")]
    MalformedInversionTable(String),
}

/// One violation of the placement rules, reported by [`StaircaseTableau::violations`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Violation {
    /// Diagonal cell `(row, row)` is empty.
    DiagonalUnlabeled { row: usize },
    /// Cell `(row, col)` is occupied but lies above an α/γ at `(below, col)`.
    OccupiedAboveAlphaGamma { row: usize, col: usize, below: usize },
    /// Cell `(row, col)` is occupied but lies left of a β/δ at `(row, right)`.
    OccupiedLeftOfBetaDelta { row: usize, col: usize, right: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DiagonalUnlabeled { row } => {
                write!(f, "diagonal cell ({row}, {row}) is unlabeled")
            }
            Violation::OccupiedAboveAlphaGamma { row, col, below } => write!(
                f,
                "cell ({row}, {col}) occupied above alpha/gamma at ({below}, {col})"
            ),
            Violation::OccupiedLeftOfBetaDelta { row, col, right } => write!(
                f,
                "cell ({row}, {col}) occupied left of beta/delta at ({row}, {right})"
            ),
        }
    }
}

fn tri_len(size: usize) -> usize {
    size * (size + 1) / 2
}

fn tri_index(i: usize, j: usize) -> usize {
    debug_assert!(1 <= j && j <= i);
    i * (i - 1) / 2 + (j - 1)
}

/// A type A staircase tableau (possibly violating the placement rules;
/// see [`StaircaseTableau::validate`]).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct StaircaseTableau {
    size: usize,
    cells: Vec<Option<Label>>,
}

impl StaircaseTableau {
    /// The unique tableau of size 0.
    pub fn empty() -> StaircaseTableau {
        StaircaseTableau {
            size: 0,
            cells: Vec::new(),
        }
    }

    /// An all-empty tableau of the given size (invalid until the diagonal
    /// is labeled).
    pub fn blank(size: usize) -> StaircaseTableau {
        StaircaseTableau {
            size,
            cells: vec![None; tri_len(size)],
        }
    }

    /// Builder: sets one cell, consuming and returning the tableau.
    pub fn with_cell(mut self, i: usize, j: usize, l: Label) -> StaircaseTableau {
        self.set(i, j, Some(l));
        self
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Label of cell `(i, j)`; panics when the cell is outside the staircase.
    pub fn get(&self, i: usize, j: usize) -> Option<Label> {
        assert!(
            1 <= j && j <= i && i <= self.size,
            "cell ({i}, {j}) outside staircase of size {}",
            self.size
        );
        self.cells[tri_index(i, j)]
    }

    fn set(&mut self, i: usize, j: usize, l: Option<Label>) {
        assert!(1 <= j && j <= i && i <= self.size);
        self.cells[tri_index(i, j)] = l;
    }

    /// All placement-rule violations, in row-major cell order.
    pub fn violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for i in 1..=self.size {
            if self.get(i, i).is_none() {
                out.push(Violation::DiagonalUnlabeled { row: i });
            }
            for j in 1..=i {
                if self.get(i, j).is_none() {
                    continue;
                }
                // Above an alpha/gamma in the same column?
                for below in (j..i).rev() {
                    match self.get(below, j) {
                        Some(l) if l.is_alpha_gamma() => {
                            out.push(Violation::OccupiedAboveAlphaGamma { row: i, col: j, below });
                            break;
                        }
                        Some(_) => break,
                        None => {}
                    }
                }
                // Left of a beta/delta in the same row?
                for right in j + 1..=i {
                    match self.get(i, right) {
                        Some(l) if l.is_beta_delta() => {
                            out.push(Violation::OccupiedLeftOfBetaDelta { row: i, col: j, right });
                            break;
                        }
                        Some(_) => break,
                        None => {}
                    }
                }
            }
        }
        out
    }

    pub fn validate(&self) -> bool {
        self.violations().is_empty()
    }

    fn invalid_error(&self) -> TableauError {
        TableauError::Invalid(self.violations().iter().map(|v| v.to_string()).collect())
    }

    /// Nearest label strictly to the right in the same row.
    fn nearest_right(&self, i: usize, j: usize) -> Option<Label> {
        (j + 1..=i).find_map(|k| self.get(i, k))
    }

    /// Nearest label strictly below in the same column.
    fn nearest_below(&self, i: usize, j: usize) -> Option<Label> {
        (j..i).rev().find_map(|k| self.get(k, j))
    }

    /// Assigns q/u to every empty cell. Errors when the tableau is invalid.
    pub fn fill(&self) -> Result<FilledTableau, TableauError> {
        if !self.validate() {
            return Err(self.invalid_error());
        }
        let mut syms = Vec::with_capacity(tri_len(self.size));
        for i in 1..=self.size {
            for j in 1..=i {
                let sym = match self.get(i, j) {
                    Some(l) => FillSym::Labeled(l),
                    None => {
                        let r = self
                            .nearest_right(i, j)
                            .expect("diagonal guarantees a label to the right");
                        match r {
                            Label::Delta => FillSym::Q,
                            Label::Beta => FillSym::U,
                            Label::Alpha | Label::Gamma => {
                                let b = self
                                    .nearest_below(i, j)
                                    .expect("diagonal guarantees a label below");
                                if matches!(b, Label::Beta | Label::Gamma) {
                                    FillSym::Q
                                } else {
                                    FillSym::U
                                }
                            }
                        }
                    }
                };
                syms.push(sym);
            }
        }
        Ok(FilledTableau {
            size: self.size,
            syms,
        })
    }

    /// The weight monomial: product of all symbols of the filled tableau.
    pub fn weight(&self) -> Result<Polynomial, TableauError> {
        Ok(Polynomial::monomial(
            self.fill()?.weight_monomial(),
            BigRational::one(),
        ))
    }

    /// The type: diagonal read-off `m_i` from cell `(i, i)`, α/δ filled,
    /// β/γ empty.
    pub fn type_of(&self) -> Result<State, TableauError> {
        if !self.validate() {
            return Err(self.invalid_error());
        }
        let letters = (1..=self.size)
            .rev()
            .map(|i| self.get(i, i).expect("validated diagonal").state_letter())
            .collect();
        Ok(State::from_letters(letters))
    }

    /// Rows whose diagonal label is α or γ, ascending.
    fn alpha_gamma_rows(&self) -> Vec<usize> {
        (1..=self.size)
            .filter(|&i| self.get(i, i).is_some_and(Label::is_alpha_gamma))
            .collect()
    }

    /// Moves cells `(src, k) -> (dst, k)` for `k <= max_col`. All target
    /// cells in that range must be empty.
    fn move_cols(&mut self, src: usize, dst: usize, max_col: usize) -> Result<(), TableauError> {
        for k in 1..=max_col {
            if self.get(dst, k).is_some() {
                return Err(TableauError::MoveObstructed(format!(
                    "({dst}, {k}) while moving row {src} to row {dst}"
                )));
            }
        }
        for k in 1..=max_col {
            if let Some(l) = self.get(src, k) {
                self.set(dst, k, Some(l));
                self.set(src, k, None);
            }
        }
        Ok(())
    }

    fn grown(&self) -> StaircaseTableau {
        let mut cells = self.cells.clone();
        cells.resize(tri_len(self.size + 1), None);
        StaircaseTableau {
            size: self.size + 1,
            cells,
        }
    }

    /// Drops the top row, which must hold nothing but its diagonal label
    /// (if that).
    fn shrunk(mut self) -> Result<StaircaseTableau, TableauError> {
        let n = self.size;
        assert!(n >= 1);
        for j in 1..n {
            if self.get(n, j).is_some() {
                return Err(TableauError::NotInImage(format!(
                    "residual label at ({n}, {j}) after reversal"
                )));
            }
        }
        self.cells.truncate(tri_len(n - 1));
        self.size = n - 1;
        Ok(self)
    }

    /// Applies one insertion event, producing a tableau one size larger.
    ///
    /// The input must be valid; the output is then valid too (checked by a
    /// debug assertion).
    pub fn insert(&self, event: &InsertionEvent) -> Result<StaircaseTableau, TableauError> {
        let n = self.size;
        if !event.valid_for_a(n) {
            return Err(TableauError::InvalidEvent(format!(
                "{event} cannot be inserted into a type A tableau of size {n}"
            )));
        }
        let mut t = self.grown();
        t.set(n + 1, n + 1, Some(event.top_label()));
        match *event {
            InsertionEvent::Letter(x) if x.is_beta_delta() => {}
            InsertionEvent::Letter(_) => {
                let rows = t.alpha_gamma_rows();
                for p in (0..rows.len() - 1).rev() {
                    t.move_cols(rows[p], rows[p + 1], rows[p] - 1)?;
                }
            }
            InsertionEvent::Triple { y, pos, .. } => {
                let rows: Vec<usize> = t
                    .alpha_gamma_rows()
                    .into_iter()
                    .filter(|&r| r > pos)
                    .collect();
                for p in (0..rows.len() - 1).rev() {
                    t.move_cols(rows[p], rows[p + 1], rows[p] - 1)?;
                }
                t.move_cols(pos, rows[0], pos)?;
                t.set(pos, pos, Some(y));
            }
        }
        debug_assert!(t.validate(), "insertion produced an invalid tableau");
        Ok(t)
    }

    /// Inverts [`StaircaseTableau::insert`]: recovers the size-n tableau and
    /// the event that produced this size-(n+1) tableau.
    pub fn uninsert(&self) -> Result<(StaircaseTableau, InsertionEvent), TableauError> {
        let m = self.size;
        if m == 0 {
            return Err(TableauError::NotInImage(
                "the empty tableau has no predecessor".into(),
            ));
        }
        if !self.validate() {
            return Err(self.invalid_error());
        }
        let x = self.get(m, m).expect("validated diagonal");
        if x.is_beta_delta() {
            return Ok((self.clone().shrunk()?, InsertionEvent::Letter(x)));
        }
        let rows = self.alpha_gamma_rows();
        // First alpha/gamma row strictly above column j; exists because the
        // top row is alpha/gamma.
        let special_row = |j: usize| rows[rows.partition_point(|&r| r <= j)];
        let triple_col = (1..m).rev().find(|&j| self.get(special_row(j), j).is_some());
        let mut t = self.clone();
        let event = match triple_col {
            None => {
                for p in 0..rows.len() - 1 {
                    t.move_cols(rows[p + 1], rows[p], rows[p] - 1)?;
                }
                InsertionEvent::Letter(x)
            }
            Some(i) => {
                let y = t.get(i, i).ok_or_else(|| {
                    TableauError::NotInImage(format!("diagonal ({i}, {i}) empty"))
                })?;
                if !y.is_beta_delta() {
                    return Err(TableauError::NotInImage(format!(
                        "diagonal ({i}, {i}) holds {} where beta/delta is required",
                        y.to_char()
                    )));
                }
                t.set(i, i, None);
                let s = special_row(i);
                t.move_cols(s, i, i)?;
                let above: Vec<usize> = rows.iter().copied().filter(|&r| r >= s).collect();
                for p in 0..above.len() - 1 {
                    t.move_cols(above[p + 1], above[p], above[p] - 1)?;
                }
                InsertionEvent::Triple { x, y, pos: i }
            }
        };
        let t = t.shrunk()?;
        debug_assert!(t.validate(), "uninsertion produced an invalid tableau");
        Ok((t, event))
    }

    /// Peels off all n insertion events and encodes them as a colored
    /// inversion table `I = (i_1, ..., i_n)`.
    pub fn to_inversion_table(&self) -> Result<ColoredInversionTable, TableauError> {
        let mut events = Vec::with_capacity(self.size);
        let mut t = self.clone();
        while t.size() > 0 {
            let (prev, e) = t.uninsert()?;
            events.push(e);
            t = prev;
        }
        events.reverse();
        let entries = events
            .iter()
            .map(|e| match *e {
                InsertionEvent::Letter(x) if x.is_alpha_gamma() => InvEntry {
                    value: 0,
                    x: Some(x),
                    y: None,
                },
                InsertionEvent::Letter(y) => InvEntry {
                    value: events.len(), // overwritten below
                    x: None,
                    y: Some(y),
                },
                InsertionEvent::Triple { x, y, pos } => InvEntry {
                    value: pos,
                    x: Some(x),
                    y: Some(y),
                },
            })
            .collect::<Vec<_>>();
        // Letter(beta/delta) at step k encodes as value k.
        let entries = entries
            .into_iter()
            .enumerate()
            .map(|(ix, mut e)| {
                if e.x.is_none() {
                    e.value = ix + 1;
                }
                e
            })
            .collect();
        ColoredInversionTable::new(entries)
    }

    /// Renders the textual form: one line per row, top row first, `.` for
    /// empty cells.
    pub fn render(&self) -> String {
        let mut lines = Vec::with_capacity(self.size);
        for i in (1..=self.size).rev() {
            let line: String = (1..=i)
                .map(|j| self.get(i, j).map_or('.', Label::to_char))
                .collect();
            lines.push(line);
        }
        lines.join("\n")
    }

    /// Parses the textual form produced by [`StaircaseTableau::render`].
    /// Blank lines before and after the block are ignored, so a single
    /// entry cut from an enumeration listing parses as-is.
    pub fn parse(text: &str) -> Result<StaircaseTableau, ParseError> {
        let lines = parse_lines(text);
        let size = lines.len();
        let mut t = StaircaseTableau::blank(size);
        for (ix, line) in lines.iter().enumerate() {
            let i = size - ix;
            let chars: Vec<char> = line.chars().collect();
            if chars.len() != i {
                return Err(ParseError(format!(
                    "row {i} must have {i} cells, got {}",
                    chars.len()
                )));
            }
            for (j, &c) in chars.iter().enumerate() {
                let cell = match c {
                    '.' => None,
                    _ => Some(Label::from_char(c).ok_or_else(|| {
                        ParseError(format!("bad cell character {c:?} in row {i}"))
                    })?),
                };
                t.set(i, j + 1, cell);
            }
        }
        Ok(t)
    }
}

/// A tableau with q/u assigned to its empty cells.
pub struct FilledTableau {
    size: usize,
    syms: Vec<FillSym>,
}

/// One symbol of a filled tableau.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FillSym {
    Labeled(Label),
    Q,
    U,
}

impl FilledTableau {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn sym(&self, i: usize, j: usize) -> FillSym {
        assert!(1 <= j && j <= i && i <= self.size);
        self.syms[tri_index(i, j)]
    }

    /// Product of all symbols.
    pub fn weight_monomial(&self) -> Monomial {
        let mut m = Monomial::one();
        for sym in &self.syms {
            let v = match sym {
                FillSym::Labeled(l) => l.var(),
                FillSym::Q => Var::Q,
                FillSym::U => Var::U,
            };
            m = m.times(v, 1);
        }
        m
    }

    /// Text form with `q`/`u` shown in the previously empty cells.
    pub fn render(&self) -> String {
        let mut lines = Vec::with_capacity(self.size);
        for i in (1..=self.size).rev() {
            let line: String = (1..=i)
                .map(|j| match self.sym(i, j) {
                    FillSym::Labeled(l) => l.to_char(),
                    FillSym::Q => 'q',
                    FillSym::U => 'u',
                })
                .collect();
            lines.push(line);
        }
        lines.join("\n")
    }
}

/// One step of the insertion bijection.
///
/// For type A tableaux of size n there are `4(n+1)` events: the four
/// letters, and triples `(x, y, i)` with `x ∈ {α, γ}`, `y ∈ {β, δ}`,
/// `1 <= i <= n`. (Type B tableaux admit triples with any `x`; see
/// [`crate::tableau_b`].)
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum InsertionEvent {
    Letter(Label),
    Triple { x: Label, y: Label, pos: usize },
}

impl InsertionEvent {
    /// The label written into the new top diagonal cell.
    pub fn top_label(&self) -> Label {
        match *self {
            InsertionEvent::Letter(x) => x,
            InsertionEvent::Triple { x, .. } => x,
        }
    }

    pub fn valid_for_a(&self, size: usize) -> bool {
        match *self {
            InsertionEvent::Letter(_) => true,
            InsertionEvent::Triple { x, y, pos } => {
                x.is_alpha_gamma() && y.is_beta_delta() && 1 <= pos && pos <= size
            }
        }
    }

    pub fn valid_for_b(&self, size: usize) -> bool {
        match *self {
            InsertionEvent::Letter(_) => true,
            InsertionEvent::Triple { y, pos, .. } => {
                y.is_beta_delta() && 1 <= pos && pos <= size
            }
        }
    }

    /// All type A events for a size-n tableau, in canonical order: the four
    /// letters (α, β, γ, δ), then triples by position, then x, then y.
    pub fn events_a(size: usize, filter: Option<LabelSet>) -> Vec<InsertionEvent> {
        let f = filter.unwrap_or_else(LabelSet::all);
        let mut out = Vec::new();
        for l in Label::ALL {
            if f.contains(l) {
                out.push(InsertionEvent::Letter(l));
            }
        }
        for pos in 1..=size {
            for x in [Label::Alpha, Label::Gamma] {
                for y in [Label::Beta, Label::Delta] {
                    if f.contains(x) && f.contains(y) {
                        out.push(InsertionEvent::Triple { x, y, pos });
                    }
                }
            }
        }
        out
    }

    /// All type B events for a size-n half tableau: `4(2n+1)` of them, with
    /// x ranging over all four labels.
    pub fn events_b(size: usize, filter: Option<LabelSet>) -> Vec<InsertionEvent> {
        let f = filter.unwrap_or_else(LabelSet::all);
        let mut out = Vec::new();
        for l in Label::ALL {
            if f.contains(l) {
                out.push(InsertionEvent::Letter(l));
            }
        }
        for pos in 1..=size {
            for x in Label::ALL {
                for y in [Label::Beta, Label::Delta] {
                    if f.contains(x) && f.contains(y) {
                        out.push(InsertionEvent::Triple { x, y, pos });
                    }
                }
            }
        }
        out
    }

    /// Parses `"a"` or `"a,b,3"`.
    pub fn parse(s: &str) -> Result<InsertionEvent, ParseError> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let label = |t: &str| {
            let mut chars = t.chars();
            match (chars.next(), chars.next()) {
                (Some(c), None) => {
                    Label::from_char(c).ok_or_else(|| ParseError(format!("bad label {t:?}")))
                }
                _ => Err(ParseError(format!("bad label {t:?}"))),
            }
        };
        match parts.as_slice() {
            [one] => Ok(InsertionEvent::Letter(label(one)?)),
            [x, y, pos] => Ok(InsertionEvent::Triple {
                x: label(x)?,
                y: label(y)?,
                pos: pos
                    .parse()
                    .map_err(|_| ParseError(format!("bad position {pos:?}")))?,
            }),
            _ => Err(ParseError(format!("bad event {s:?}"))),
        }
    }
}

impl fmt::Display for InsertionEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            InsertionEvent::Letter(x) => write!(f, "{}", x.to_char()),
            InsertionEvent::Triple { x, y, pos } => {
                write!(f, "{},{},{}", x.to_char(), y.to_char(), pos)
            }
        }
    }
}

/// Depth-first stream of all valid tableaux of a given size, generated by
/// the insertion bijection. With a filter, only events whose labels all lie
/// in the set are used, which enumerates exactly the tableaux over that
/// label subset.
pub struct Enumeration {
    target: usize,
    levels: Vec<Vec<InsertionEvent>>,
    stack: Vec<(StaircaseTableau, usize)>,
}

/// Splits tableau text into trimmed rows, dropping blank lines at either
/// end (interior blanks are kept and will fail row-length checks).
pub(crate) fn parse_lines(text: &str) -> Vec<&str> {
    let lines: Vec<&str> = text.lines().map(str::trim_end).collect();
    let start = lines.iter().position(|l| !l.is_empty());
    let end = lines.iter().rposition(|l| !l.is_empty());
    match (start, end) {
        (Some(s), Some(e)) => lines[s..=e].to_vec(),
        _ => Vec::new(),
    }
}

/// All size-n tableaux (over the filtered label set), each exactly once.
pub fn enumerate(size: usize, filter: Option<LabelSet>) -> Enumeration {
    let levels = (0..size)
        .map(|k| InsertionEvent::events_a(k, filter))
        .collect();
    Enumeration {
        target: size,
        levels,
        stack: vec![(StaircaseTableau::empty(), 0)],
    }
}

impl Iterator for Enumeration {
    type Item = StaircaseTableau;

    fn next(&mut self) -> Option<StaircaseTableau> {
        while let Some((tab, next_ev)) = self.stack.last_mut() {
            let depth = tab.size();
            if depth == self.target {
                return Some(self.stack.pop().expect("nonempty stack").0);
            }
            let events = &self.levels[depth];
            if *next_ev < events.len() {
                let e = events[*next_ev];
                *next_ev += 1;
                let child = tab.insert(&e).expect("enumeration events are valid");
                self.stack.push((child, 0));
            } else {
                self.stack.pop();
            }
        }
        None
    }
}

/// The generating polynomial `Z_n`: sum of weights over all size-n tableaux
/// (over the filtered label set). All variables stay symbolic.
pub fn partition_fn(size: usize, filter: Option<LabelSet>) -> Polynomial {
    let mut z = Polynomial::zero();
    for t in enumerate(size, filter) {
        let filled = t.fill().expect("enumerated tableaux are valid");
        z.add_term(filled.weight_monomial(), &BigRational::one());
    }
    z
}

/// One entry of a colored inversion table.
///
/// Entry k takes one of 4k colored values: `0` colored by `x ∈ {α, γ}`,
/// `k` colored by `y ∈ {β, δ}`, or `j ∈ (0, k)` colored by both.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct InvEntry {
    pub value: usize,
    pub x: Option<Label>,
    pub y: Option<Label>,
}

impl InvEntry {
    fn well_formed(&self, k: usize) -> Result<(), String> {
        if self.value > k {
            return Err(format!("entry {k} has value {} > {k}", self.value));
        }
        let x_ok = self.x.is_none_or(Label::is_alpha_gamma);
        let y_ok = self.y.is_none_or(Label::is_beta_delta);
        let shape_ok = if self.value == 0 {
            self.x.is_some() && self.y.is_none()
        } else if self.value == k {
            self.x.is_none() && self.y.is_some()
        } else {
            self.x.is_some() && self.y.is_some()
        };
        if x_ok && y_ok && shape_ok {
            Ok(())
        } else {
            Err(format!(
                "entry {k} with value {} has colors x={:?} y={:?}",
                self.value, self.x, self.y
            ))
        }
    }

    fn to_event(self, k: usize) -> InsertionEvent {
        if self.value == 0 {
            InsertionEvent::Letter(self.x.expect("well-formed"))
        } else if self.value == k {
            InsertionEvent::Letter(self.y.expect("well-formed"))
        } else {
            InsertionEvent::Triple {
                x: self.x.expect("well-formed"),
                y: self.y.expect("well-formed"),
                pos: self.value,
            }
        }
    }
}

/// A colored inversion table `(i_1, ..., i_n)`, in bijection with size-n
/// tableaux.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ColoredInversionTable {
    entries: Vec<InvEntry>,
}

impl ColoredInversionTable {
    pub fn new(entries: Vec<InvEntry>) -> Result<ColoredInversionTable, TableauError> {
        for (ix, e) in entries.iter().enumerate() {
            e.well_formed(ix + 1)
                .map_err(TableauError::MalformedInversionTable)?;
        }
        Ok(ColoredInversionTable { entries })
    }

    pub fn entries(&self) -> &[InvEntry] {
        &self.entries
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    /// Replays the encoded insertion events from the empty tableau.
    pub fn to_tableau(&self) -> Result<StaircaseTableau, TableauError> {
        let mut t = StaircaseTableau::empty();
        for (ix, e) in self.entries.iter().enumerate() {
            t = t.insert(&e.to_event(ix + 1))?;
        }
        Ok(t)
    }

    fn values(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.iter().map(|e| e.value)
    }

    fn check_colors(&self, allowed: LabelSet) -> Result<(), TableauError> {
        for (ix, e) in self.entries.iter().enumerate() {
            for l in [e.x, e.y].into_iter().flatten() {
                if !allowed.contains(l) {
                    return Err(TableauError::MalformedInversionTable(format!(
                        "entry {} uses color {} outside the allowed set",
                        ix + 1,
                        l.to_char()
                    )));
                }
            }
        }
        Ok(())
    }

    /// `Σ_k |{i_j : j < k, i_j > i_k}|`, the count of *distinct* earlier
    /// values exceeding each entry — a set cardinality, not an inversion
    /// pair count (repeated values are counted once; each distinct value
    /// marks one position turned white in the insertion history). Only
    /// defined on the {α, β} color regime, where it equals the q-exponent
    /// of the tableau weight.
    pub fn q_stat_gd0(&self) -> Result<u64, TableauError> {
        self.check_colors(LabelSet::from_labels(&[Label::Alpha, Label::Beta]))?;
        let values: Vec<usize> = self.values().collect();
        let mut count = 0u64;
        for k in 0..values.len() {
            let exceeding: std::collections::BTreeSet<usize> = values[..k]
                .iter()
                .copied()
                .filter(|&v| v > values[k])
                .collect();
            count += exceeding.len() as u64;
        }
        Ok(count)
    }

    /// `Σ_i max(i - 1 - i_i, 0)`. Only defined on the {β, γ} color regime,
    /// where it equals the q-exponent of the tableau weight.
    pub fn q_stat_ad0(&self) -> Result<u64, TableauError> {
        self.check_colors(LabelSet::from_labels(&[Label::Beta, Label::Gamma]))?;
        Ok(self
            .values()
            .enumerate()
            .map(|(ix, v)| (ix as u64).saturating_sub(v as u64))
            .sum())
    }

    /// JSON form: an array of `{"value": .., "x": "a", "y": "b"}` objects,
    /// with absent colors omitted.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.entries
                .iter()
                .map(|e| {
                    let mut obj = serde_json::Map::new();
                    obj.insert("value".into(), json!(e.value));
                    if let Some(x) = e.x {
                        obj.insert("x".into(), json!(x.to_char().to_string()));
                    }
                    if let Some(y) = e.y {
                        obj.insert("y".into(), json!(y.to_char().to_string()));
                    }
                    Value::Object(obj)
                })
                .collect(),
        )
    }

    pub fn from_json(v: &Value) -> Result<ColoredInversionTable, ParseError> {
        let arr = v
            .as_array()
            .ok_or_else(|| ParseError("inversion table JSON must be an array".into()))?;
        let mut entries = Vec::with_capacity(arr.len());
        for item in arr {
            let value = item
                .get("value")
                .and_then(Value::as_u64)
                .ok_or_else(|| ParseError("entry missing \"value\"".into()))?;
            let color = |key: &str| -> Result<Option<Label>, ParseError> {
                match item.get(key) {
                    None => Ok(None),
                    Some(Value::String(s)) if s.len() == 1 => {
                        Label::from_char(s.chars().next().expect("len 1"))
                            .map(Some)
                            .ok_or_else(|| ParseError(format!("bad color {s:?}")))
                    }
                    Some(other) => Err(ParseError(format!("bad color {other}"))),
                }
            };
            entries.push(InvEntry {
                value: value as usize,
                x: color("x")?,
                y: color("y")?,
            });
        }
        ColoredInversionTable::new(entries).map_err(|e| ParseError(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t2(c11: Label, c22: Label) -> StaircaseTableau {
        StaircaseTableau::blank(2)
            .with_cell(1, 1, c11)
            .with_cell(2, 2, c22)
    }

    fn weight_mono(t: &StaircaseTableau) -> Monomial {
        *t.weight().unwrap().as_monomial().unwrap().0
    }

    #[test]
    fn validate_accepts_and_rejects() {
        assert!(StaircaseTableau::empty().validate());
        assert!(t2(Label::Alpha, Label::Delta).validate());

        let unlabeled = StaircaseTableau::blank(1);
        assert_eq!(
            unlabeled.violations(),
            vec![Violation::DiagonalUnlabeled { row: 1 }]
        );

        // delta at (2,1) sits above the alpha at (1,1) and left of the
        // delta at (2,2).
        let bad = t2(Label::Alpha, Label::Delta).with_cell(2, 1, Label::Delta);
        assert_eq!(
            bad.violations(),
            vec![
                Violation::OccupiedAboveAlphaGamma { row: 2, col: 1, below: 1 },
                Violation::OccupiedLeftOfBetaDelta { row: 2, col: 1, right: 2 },
            ]
        );
    }

    #[test]
    fn fill_follows_nearest_labels() {
        // (2,1) left of delta -> q.
        let t = t2(Label::Alpha, Label::Delta);
        assert_eq!(t.fill().unwrap().sym(2, 1), FillSym::Q);
        assert_eq!(
            weight_mono(&t),
            Monomial::var(Var::Alpha, 1).times(Var::Delta, 1).times(Var::Q, 1)
        );

        // (2,1) left of alpha, above alpha -> u.
        let t = t2(Label::Alpha, Label::Alpha);
        assert_eq!(t.fill().unwrap().sym(2, 1), FillSym::U);
        assert_eq!(
            weight_mono(&t),
            Monomial::var(Var::Alpha, 2).times(Var::U, 1)
        );

        // (2,1) left of alpha, above beta -> q.
        let t = t2(Label::Beta, Label::Alpha);
        assert_eq!(t.fill().unwrap().sym(2, 1), FillSym::Q);
        assert_eq!(
            weight_mono(&t),
            Monomial::var(Var::Alpha, 1).times(Var::Beta, 1).times(Var::Q, 1)
        );

        // (2,1) left of beta -> u.
        let t = t2(Label::Gamma, Label::Beta);
        assert_eq!(t.fill().unwrap().sym(2, 1), FillSym::U);

        assert!(StaircaseTableau::blank(1).fill().is_err());
    }

    #[test]
    fn type_reads_the_diagonal() {
        assert_eq!(StaircaseTableau::empty().type_of().unwrap(), State::empty());
        assert_eq!(
            t2(Label::Alpha, Label::Delta).type_of().unwrap(),
            State::parse("bb").unwrap()
        );
        assert_eq!(
            t2(Label::Beta, Label::Alpha).type_of().unwrap(),
            State::parse("bw").unwrap()
        );
        assert_eq!(
            t2(Label::Gamma, Label::Gamma).type_of().unwrap(),
            State::parse("ww").unwrap()
        );
    }

    #[test]
    fn insert_letter_cases() {
        let a1 = StaircaseTableau::empty()
            .insert(&InsertionEvent::Letter(Label::Gamma))
            .unwrap();
        assert_eq!(a1, StaircaseTableau::blank(1).with_cell(1, 1, Label::Gamma));

        let base = StaircaseTableau::blank(1).with_cell(1, 1, Label::Alpha);
        let grown = base.insert(&InsertionEvent::Letter(Label::Delta)).unwrap();
        assert_eq!(grown, t2(Label::Alpha, Label::Delta));

        // Letter(alpha) onto an alpha row cascades (vacuously for size 1).
        let grown = base.insert(&InsertionEvent::Letter(Label::Alpha)).unwrap();
        assert_eq!(grown, t2(Label::Alpha, Label::Alpha));
    }

    #[test]
    fn insert_triple_moves_the_row() {
        let base = StaircaseTableau::blank(1).with_cell(1, 1, Label::Alpha);
        let e = InsertionEvent::Triple {
            x: Label::Alpha,
            y: Label::Beta,
            pos: 1,
        };
        let t = base.insert(&e).unwrap();
        let expected = t2(Label::Beta, Label::Alpha).with_cell(2, 1, Label::Alpha);
        assert_eq!(t, expected);
        assert_eq!(
            weight_mono(&t),
            Monomial::var(Var::Alpha, 2).times(Var::Beta, 1)
        );
        assert_eq!(t.type_of().unwrap(), State::parse("bw").unwrap());
    }

    #[test]
    fn insert_rejects_bad_events() {
        let base = StaircaseTableau::blank(1).with_cell(1, 1, Label::Alpha);
        for bad in [
            InsertionEvent::Triple { x: Label::Beta, y: Label::Beta, pos: 1 },
            InsertionEvent::Triple { x: Label::Alpha, y: Label::Alpha, pos: 1 },
            InsertionEvent::Triple { x: Label::Alpha, y: Label::Beta, pos: 2 },
            InsertionEvent::Triple { x: Label::Alpha, y: Label::Beta, pos: 0 },
        ] {
            assert!(matches!(
                base.insert(&bad),
                Err(TableauError::InvalidEvent(_))
            ));
        }
    }

    #[test]
    fn uninsert_inverts_the_examples() {
        let base = StaircaseTableau::blank(1).with_cell(1, 1, Label::Alpha);
        let e = InsertionEvent::Triple {
            x: Label::Alpha,
            y: Label::Beta,
            pos: 1,
        };
        let t = base.insert(&e).unwrap();
        assert_eq!(t.uninsert().unwrap(), (base.clone(), e));

        let t = base.insert(&InsertionEvent::Letter(Label::Delta)).unwrap();
        assert_eq!(
            t.uninsert().unwrap(),
            (base.clone(), InsertionEvent::Letter(Label::Delta))
        );

        assert!(StaircaseTableau::empty().uninsert().is_err());
        assert!(StaircaseTableau::blank(1).uninsert().is_err());
    }

    #[test]
    fn round_trips_exhaustively_small() {
        for n in 0..=3 {
            let events = InsertionEvent::events_a(n, None);
            assert_eq!(events.len(), 4 * (n + 1));
            for t in enumerate(n, None) {
                for e in &events {
                    let big = t.insert(e).unwrap();
                    let (back, be) = big.uninsert().unwrap();
                    assert_eq!((back, be), (t.clone(), *e));
                }
            }
            for big in enumerate(n + 1, None) {
                let (small, e) = big.uninsert().unwrap();
                assert_eq!(small.insert(&e).unwrap(), big);
            }
        }
    }

    #[test]
    fn enumerate_counts() {
        // 4^n n!
        let expect = [1u64, 4, 32, 384];
        for (n, &want) in expect.iter().enumerate() {
            assert_eq!(enumerate(n, None).count() as u64, want);
        }
        // Restricted to {alpha, delta}: (n+1)! tableaux.
        let ad = LabelSet::from_labels(&[Label::Alpha, Label::Delta]);
        for n in 0..=3 {
            let want: u64 = (1..=n as u64 + 1).product();
            assert_eq!(enumerate(n, Some(ad)).count() as u64, want);
        }
    }

    #[test]
    fn partition_fn_examples() {
        let z1 = partition_fn(1, None);
        let sum = Label::ALL
            .iter()
            .fold(Polynomial::zero(), |acc, l| &acc + &Polynomial::var(l.var()));
        assert_eq!(z1, sum);

        // Z_2 restricted to {alpha, delta}, written out term by term.
        let ad = LabelSet::from_labels(&[Label::Alpha, Label::Delta]);
        let z2 = partition_fn(2, Some(ad));
        let mut expected = Polynomial::zero();
        for (a, d, q, u) in [
            (2, 0, 0, 1),
            (1, 1, 1, 0),
            (1, 1, 0, 1),
            (0, 2, 1, 0),
            (2, 1, 0, 0),
            (1, 2, 0, 0),
        ] {
            expected.add_term(
                Monomial::var(Var::Alpha, a)
                    .times(Var::Delta, d)
                    .times(Var::Q, q)
                    .times(Var::U, u),
                &BigRational::one(),
            );
        }
        assert_eq!(z2, expected);
    }

    #[test]
    fn inversion_table_round_trip() {
        let base = StaircaseTableau::blank(1).with_cell(1, 1, Label::Alpha);
        let t = base
            .insert(&InsertionEvent::Triple { x: Label::Alpha, y: Label::Beta, pos: 1 })
            .unwrap();
        let inv = t.to_inversion_table().unwrap();
        assert_eq!(
            inv.entries(),
            &[
                InvEntry { value: 0, x: Some(Label::Alpha), y: None },
                InvEntry { value: 1, x: Some(Label::Alpha), y: Some(Label::Beta) },
            ]
        );
        assert_eq!(inv.to_tableau().unwrap(), t);

        let j = inv.to_json();
        assert_eq!(
            serde_json::to_string(&j).unwrap(),
            r#"[{"value":0,"x":"a"},{"value":1,"x":"a","y":"b"}]"#
        );
        assert_eq!(ColoredInversionTable::from_json(&j).unwrap(), inv);

        for n in 0..=3 {
            for t in enumerate(n, None) {
                assert_eq!(t.to_inversion_table().unwrap().to_tableau().unwrap(), t);
            }
        }
    }

    #[test]
    fn inversion_table_rejects_malformed_entries() {
        // value 0 must carry an x color.
        assert!(ColoredInversionTable::new(vec![InvEntry {
            value: 0,
            x: None,
            y: Some(Label::Beta),
        }])
        .is_err());
        // value k must carry a y color only.
        assert!(ColoredInversionTable::new(vec![InvEntry {
            value: 1,
            x: Some(Label::Alpha),
            y: None,
        }])
        .is_err());
        // value beyond k.
        assert!(ColoredInversionTable::new(vec![InvEntry {
            value: 2,
            x: None,
            y: Some(Label::Beta),
        }])
        .is_err());
    }

    #[test]
    fn q_statistics_match_q_exponents_on_examples() {
        // beta then alpha: one inversion, weight q*alpha*beta.
        let t = StaircaseTableau::empty()
            .insert(&InsertionEvent::Letter(Label::Beta))
            .unwrap()
            .insert(&InsertionEvent::Letter(Label::Alpha))
            .unwrap();
        let inv = t.to_inversion_table().unwrap();
        assert_eq!(inv.q_stat_gd0().unwrap(), 1);
        assert_eq!(weight_mono(&t).exponent(Var::Q), 1);

        // alpha then beta: no inversions, weight u*alpha*beta.
        let t = StaircaseTableau::empty()
            .insert(&InsertionEvent::Letter(Label::Alpha))
            .unwrap()
            .insert(&InsertionEvent::Letter(Label::Beta))
            .unwrap();
        let inv = t.to_inversion_table().unwrap();
        assert_eq!(inv.q_stat_gd0().unwrap(), 0);
        assert_eq!(weight_mono(&t).exponent(Var::Q), 0);

        // beta, then a triple overwriting the position beta whitened, then
        // alpha: values (1, 1, 0). The alpha entry sees two earlier values
        // exceeding 0 but only one distinct one — and the weight carries a
        // single q.
        let t = StaircaseTableau::empty()
            .insert(&InsertionEvent::Letter(Label::Beta))
            .unwrap()
            .insert(&InsertionEvent::Triple {
                x: Label::Alpha,
                y: Label::Beta,
                pos: 1,
            })
            .unwrap()
            .insert(&InsertionEvent::Letter(Label::Alpha))
            .unwrap();
        let inv = t.to_inversion_table().unwrap();
        assert_eq!(
            inv.entries().iter().map(|e| e.value).collect::<Vec<_>>(),
            vec![1, 1, 0]
        );
        assert_eq!(inv.q_stat_gd0().unwrap(), 1);
        assert_eq!(weight_mono(&t).exponent(Var::Q), 1);

        // beta then gamma, {beta, gamma} regime: statistic 1, weight q*beta*gamma.
        let t = StaircaseTableau::empty()
            .insert(&InsertionEvent::Letter(Label::Beta))
            .unwrap()
            .insert(&InsertionEvent::Letter(Label::Gamma))
            .unwrap();
        let inv = t.to_inversion_table().unwrap();
        assert_eq!(inv.q_stat_ad0().unwrap(), 1);
        assert_eq!(weight_mono(&t).exponent(Var::Q), 1);

        // gamma then beta: statistic 0.
        let t = StaircaseTableau::empty()
            .insert(&InsertionEvent::Letter(Label::Gamma))
            .unwrap()
            .insert(&InsertionEvent::Letter(Label::Beta))
            .unwrap();
        assert_eq!(t.to_inversion_table().unwrap().q_stat_ad0().unwrap(), 0);
        assert_eq!(weight_mono(&t).exponent(Var::Q), 0);
    }

    #[test]
    fn q_statistics_reject_foreign_colors() {
        let t = t2(Label::Alpha, Label::Delta);
        let inv = t.to_inversion_table().unwrap();
        assert!(matches!(
            inv.q_stat_gd0(),
            Err(TableauError::MalformedInversionTable(_))
        ));
        assert!(matches!(
            inv.q_stat_ad0(),
            Err(TableauError::MalformedInversionTable(_))
        ));
    }

    #[test]
    fn text_format_round_trips() {
        let t = t2(Label::Beta, Label::Alpha).with_cell(2, 1, Label::Alpha);
        assert_eq!(t.render(), "aa\nb");
        assert_eq!(StaircaseTableau::parse("aa\nb").unwrap(), t);

        let t = t2(Label::Alpha, Label::Delta);
        assert_eq!(t.render(), ".d\na");
        assert_eq!(StaircaseTableau::parse(".d\na").unwrap(), t);
        assert_eq!(t.fill().unwrap().render(), "qd\na");

        assert_eq!(StaircaseTableau::parse("").unwrap(), StaircaseTableau::empty());
        assert!(StaircaseTableau::parse("a\nbb").is_err());
        assert!(StaircaseTableau::parse("xx\na").is_err());
    }

    #[test]
    fn event_string_round_trips() {
        for s in ["a", "d", "a,b,3", "g,d,1"] {
            assert_eq!(InsertionEvent::parse(s).unwrap().to_string(), s);
        }
        assert!(InsertionEvent::parse("ab").is_err());
        assert!(InsertionEvent::parse("a,b").is_err());
        assert!(InsertionEvent::parse("a,b,x").is_err());
    }
}
