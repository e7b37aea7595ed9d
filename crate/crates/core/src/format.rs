//! Line-oriented text formats for clopens, bisections, tables, points,
//! binary tree pairs and witness bundles.
//!
//! ```text
//! space n=1 k=2 r=1          table n=1 k=2 r=1            vpair
//! root:0 00                  root:0 0 -> root:0 00        0 -> 00
//! root:0 1                   root:0 10 -> root:0 01       10 -> 01
//!                            root:0 11 -> root:0 1        11 -> 1
//! ```
//!
//! Words are spelled with `0-9` then `A-Z`; `e` is the empty word. A brick is
//! `root:<i> <w_1>,...,<w_n>`. A point is `root:<i> <pre>(<period>),...`.
//! Blank lines and lines starting with `#` are ignored. Output is always in
//! canonical order, so identical values print identically.

use thiserror::Error;

use crate::bisection::PrefixBijection;
use crate::brick::{Brick, Word};
use crate::clopen::Clopen;
use crate::element::TableElement;
use crate::embedding::VElement;
use crate::point::{Periodic, RationalPoint};
use crate::space::SpaceSpec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

pub type ParseResult<T> = std::result::Result<T, ParseError>;

struct Line<'a> {
    number: usize,
    text: &'a str,
}

impl Line<'_> {
    fn err(&self, at: &str, message: impl Into<String>) -> ParseError {
        // `at` is a subslice of `text` whenever we can point into the line.
        let start = self.text.as_ptr() as usize;
        let pos = at.as_ptr() as usize;
        let column = if pos >= start && pos <= start + self.text.len() {
            pos - start + 1
        } else {
            1
        };
        ParseError {
            line: self.number,
            column,
            message: message.into(),
        }
    }
}

fn content_lines(text: &str, first_line: usize) -> Vec<Line<'_>> {
    text.lines()
        .enumerate()
        .map(|(i, t)| Line {
            number: first_line + i,
            text: t.trim_end_matches('\r'),
        })
        .filter(|l| {
            let t = l.text.trim();
            !t.is_empty() && !t.starts_with('#')
        })
        .collect()
}

fn eof(message: &str) -> ParseError {
    ParseError {
        line: 0,
        column: 0,
        message: message.into(),
    }
}

pub fn letter_char(a: u8) -> char {
    if a < 10 {
        (b'0' + a) as char
    } else {
        (b'A' + a - 10) as char
    }
}

fn char_letter(c: char) -> Option<u8> {
    match c {
        '0'..='9' => Some(c as u8 - b'0'),
        'A'..='Z' => Some(c as u8 - b'A' + 10),
        _ => None,
    }
}

pub fn write_word(w: &[u8]) -> String {
    if w.is_empty() {
        "e".into()
    } else {
        w.iter().map(|&a| letter_char(a)).collect()
    }
}

fn parse_word(line: &Line, tok: &str, k: u32) -> ParseResult<Word> {
    if tok == "e" {
        return Ok(Vec::new());
    }
    if tok.is_empty() {
        return Err(line.err(tok, "empty word must be written `e`"));
    }
    tok.char_indices()
        .map(|(i, c)| match char_letter(c) {
            Some(a) if u32::from(a) < k => Ok(a),
            Some(a) => Err(line.err(&tok[i..], format!("letter {a} outside alphabet of size {k}"))),
            None => Err(line.err(&tok[i..], format!("unexpected character {c:?}"))),
        })
        .collect()
}

pub fn write_brick(b: &Brick) -> String {
    let words: Vec<String> = b.words.iter().map(|w| write_word(w)).collect();
    format!("root:{} {}", b.root, words.join(","))
}

fn parse_root(line: &Line, tok: &str, space: &SpaceSpec) -> ParseResult<u32> {
    let Some(num) = tok.strip_prefix("root:") else {
        return Err(line.err(tok, "expected `root:<index>`"));
    };
    let root: u32 = num
        .parse()
        .map_err(|_| line.err(num, "root index is not an integer"))?;
    if root >= space.r() {
        return Err(line.err(num, format!("root {root} not below r={}", space.r())));
    }
    Ok(root)
}

fn parse_brick_tokens(line: &Line, root_tok: &str, words_tok: &str, space: &SpaceSpec) -> ParseResult<Brick> {
    let root = parse_root(line, root_tok, space)?;
    let parts: Vec<&str> = words_tok.split(',').collect();
    if parts.len() != space.n() {
        return Err(line.err(
            words_tok,
            format!("expected {} comma-separated words, found {}", space.n(), parts.len()),
        ));
    }
    let words = parts
        .iter()
        .enumerate()
        .map(|(j, p)| parse_word(line, p, space.k(j)))
        .collect::<ParseResult<_>>()?;
    Ok(Brick { root, words })
}

fn tokens(text: &str) -> Vec<&str> {
    text.split_whitespace().collect()
}

fn parse_space_fields(line: &Line, fields: &[&str]) -> ParseResult<SpaceSpec> {
    let (mut n, mut k, mut r) = (None, None, None);
    for f in fields {
        let Some((key, val)) = f.split_once('=') else {
            return Err(line.err(f, "expected key=value"));
        };
        match key {
            "n" => n = Some(val.parse::<usize>().map_err(|_| line.err(val, "bad n"))?),
            "k" => {
                let ks = val
                    .split(',')
                    .map(|x| x.parse::<u32>().map_err(|_| line.err(val, "bad k")))
                    .collect::<ParseResult<Vec<_>>>()?;
                k = Some(ks);
            }
            "r" => r = Some(val.parse::<u32>().map_err(|_| line.err(val, "bad r"))?),
            _ => return Err(line.err(f, format!("unknown field {key:?}"))),
        }
    }
    let (Some(n), Some(mut k), Some(r)) = (n, k, r) else {
        return Err(line.err(line.text, "header needs n=, k= and r="));
    };
    if k.len() == 1 && n > 1 {
        k = vec![k[0]; n];
    }
    if k.len() != n {
        return Err(line.err(line.text, format!("n={n} but {} alphabet sizes given", k.len())));
    }
    SpaceSpec::new(k, r).map_err(|e| line.err(line.text, e.to_string()))
}

fn parse_header(line: &Line, keyword: &str) -> ParseResult<SpaceSpec> {
    let toks = tokens(line.text);
    if toks.first() != Some(&keyword) {
        return Err(line.err(line.text.trim_start(), format!("expected `{keyword}` header")));
    }
    parse_space_fields(line, &toks[1..])
}

// ---- clopen -------------------------------------------------------------

pub fn write_clopen(x: &Clopen) -> String {
    let mut out = format!("space {}\n", x.space().fields());
    for b in x.bricks() {
        out.push_str(&write_brick(b));
        out.push('\n');
    }
    out
}

pub fn parse_clopen(text: &str) -> ParseResult<Clopen> {
    parse_clopen_at(text, 1)
}

fn parse_clopen_at(text: &str, first_line: usize) -> ParseResult<Clopen> {
    let lines = content_lines(text, first_line);
    let header = lines.first().ok_or_else(|| eof("missing `space` header"))?;
    let space = parse_header(header, "space")?;
    let mut bricks = Vec::new();
    for l in &lines[1..] {
        let toks = tokens(l.text);
        if toks.len() != 2 {
            return Err(l.err(l.text, "expected `root:<i> <words>`"));
        }
        let b = parse_brick_tokens(l, toks[0], toks[1], &space)?;
        if let Some(prev) = bricks.iter().find(|p: &&Brick| !p.is_disjoint(&b)) {
            return Err(l.err(toks[1], format!("brick overlaps {}", write_brick(prev))));
        }
        bricks.push(b);
    }
    Clopen::from_disjoint(&space, bricks).map_err(|e| eof(&e.to_string()))
}

// ---- bisections and tables ---------------------------------------------

fn write_cells(keyword: &str, space: &SpaceSpec, cells: &[(Brick, Brick)]) -> String {
    let mut out = format!("{keyword} {}\n", space.fields());
    for (d, r) in cells {
        out.push_str(&format!("{} -> {}\n", write_brick(d), write_brick(r)));
    }
    out
}

pub fn write_bisection(b: &PrefixBijection) -> String {
    write_cells("bisection", b.space(), b.cells())
}

pub fn write_table(t: &TableElement) -> String {
    write_cells("table", t.space(), t.cells())
}

fn parse_cells(text: &str, first_line: usize, keyword: &str) -> ParseResult<PrefixBijection> {
    let lines = content_lines(text, first_line);
    let header = lines
        .first()
        .ok_or_else(|| eof(&format!("missing `{keyword}` header")))?;
    let space = parse_header(header, keyword)?;
    let mut cells: Vec<(Brick, Brick)> = Vec::new();
    for l in &lines[1..] {
        let toks = tokens(l.text);
        if toks.len() != 5 || toks[2] != "->" {
            return Err(l.err(l.text, "expected `root:<i> <words> -> root:<j> <words>`"));
        }
        let d = parse_brick_tokens(l, toks[0], toks[1], &space)?;
        let r = parse_brick_tokens(l, toks[3], toks[4], &space)?;
        if cells.iter().any(|(pd, _)| !pd.is_disjoint(&d)) {
            return Err(l.err(toks[1], "domain brick overlaps an earlier cell"));
        }
        if cells.iter().any(|(_, pr)| !pr.is_disjoint(&r)) {
            return Err(l.err(toks[4], "range brick overlaps an earlier cell"));
        }
        cells.push((d, r));
    }
    PrefixBijection::new(&space, cells).map_err(|e| eof(&e.to_string()))
}

pub fn parse_bisection(text: &str) -> ParseResult<PrefixBijection> {
    parse_cells(text, 1, "bisection")
}

pub fn parse_table(text: &str) -> ParseResult<TableElement> {
    parse_table_at(text, 1)
}

fn parse_table_at(text: &str, first_line: usize) -> ParseResult<TableElement> {
    let b = parse_cells(text, first_line, "table")?;
    TableElement::from_bisection(b).map_err(|e| ParseError {
        line: first_line,
        column: 1,
        message: e.to_string(),
    })
}

// ---- points ---------------------------------------------------------------

pub fn write_point(p: &RationalPoint) -> String {
    let coords: Vec<String> = p
        .coords
        .iter()
        .map(|c| {
            let pre: String = c.pre().iter().map(|&a| letter_char(a)).collect();
            let per: String = c.period().iter().map(|&a| letter_char(a)).collect();
            format!("{pre}({per})")
        })
        .collect();
    format!("root:{} {}", p.root, coords.join(","))
}

/// Parses `root:<i> <pre>(<period>),...`; the `root:` part may be omitted
/// (root 0).
pub fn parse_point(text: &str, space: &SpaceSpec) -> ParseResult<RationalPoint> {
    let line = Line {
        number: 1,
        text: text.trim(),
    };
    let toks = tokens(line.text);
    let (root, coord_tok) = match toks.as_slice() {
        [c] => (0, *c),
        [r, c] => (parse_root(&line, r, space)?, *c),
        _ => return Err(line.err(line.text, "expected `[root:<i>] <pre>(<period>),...`")),
    };
    let parts: Vec<&str> = coord_tok.split(',').collect();
    if parts.len() != space.n() {
        return Err(line.err(coord_tok, format!("expected {} coordinates", space.n())));
    }
    let mut coords = Vec::new();
    for (j, part) in parts.iter().enumerate() {
        let (Some(open), true) = (part.find('('), part.ends_with(')')) else {
            return Err(line.err(part, "coordinate must look like `pre(period)`"));
        };
        let pre_tok = &part[..open];
        let per_tok = &part[open + 1..part.len() - 1];
        let pre = if pre_tok.is_empty() {
            Vec::new()
        } else {
            parse_word(&line, pre_tok, space.k(j))?
        };
        if per_tok.is_empty() || per_tok == "e" {
            return Err(line.err(per_tok, "period must be nonempty"));
        }
        let per = parse_word(&line, per_tok, space.k(j))?;
        coords.push(Periodic::new(pre, per).map_err(|e| line.err(part, e.to_string()))?);
    }
    RationalPoint::new(space, root, coords).map_err(|e| line.err(line.text, e.to_string()))
}

// ---- binary tree pairs ----------------------------------------------------

pub fn write_vpair(v: &VElement) -> String {
    let mut out = String::from("vpair\n");
    for (d, r) in v.pairs() {
        out.push_str(&format!("{} -> {}\n", write_word(&d), write_word(&r)));
    }
    out
}

pub fn parse_vpair(text: &str) -> ParseResult<VElement> {
    parse_vpair_at(text, 1)
}

fn parse_vpair_at(text: &str, first_line: usize) -> ParseResult<VElement> {
    let lines = content_lines(text, first_line);
    let header = lines.first().ok_or_else(|| eof("missing `vpair` header"))?;
    if header.text.trim() != "vpair" {
        return Err(header.err(header.text, "expected `vpair` header"));
    }
    let mut pairs = Vec::new();
    for l in &lines[1..] {
        let toks = tokens(l.text);
        if toks.len() != 3 || toks[1] != "->" {
            return Err(l.err(l.text, "expected `<word> -> <word>`"));
        }
        pairs.push((parse_word(l, toks[0], 2)?, parse_word(l, toks[2], 2)?));
    }
    VElement::from_pairs(pairs).map_err(|e| ParseError {
        line: first_line,
        column: 1,
        message: e.to_string(),
    })
}

// ---- witness bundles ------------------------------------------------------

/// A named value inside a witness bundle.
#[derive(Clone, Debug, PartialEq)]
pub enum Item {
    Clopen(Clopen),
    Bisection(PrefixBijection),
    Table(TableElement),
    VPair(VElement),
    Point(RationalPoint),
    Value(String),
}

impl Item {
    fn write(&self) -> String {
        match self {
            Item::Clopen(x) => write_clopen(x),
            Item::Bisection(b) => write_bisection(b),
            Item::Table(t) => write_table(t),
            Item::VPair(v) => write_vpair(v),
            Item::Point(p) => format!("point\n{}\n", write_point(p)),
            Item::Value(s) => format!("value {s}\n"),
        }
    }
}

/// A `witness <kind>` file: a sequence of `@name` sections, each holding one
/// of the formats above.
#[derive(Clone, Debug, PartialEq)]
pub struct Bundle {
    pub kind: String,
    pub items: Vec<(String, Item)>,
}

impl Bundle {
    pub fn new(kind: &str) -> Self {
        Bundle {
            kind: kind.into(),
            items: Vec::new(),
        }
    }

    pub fn push(&mut self, name: impl Into<String>, item: Item) -> &mut Self {
        self.items.push((name.into(), item));
        self
    }

    pub fn get(&self, name: &str) -> Option<&Item> {
        self.items.iter().find(|(n, _)| n == name).map(|(_, i)| i)
    }

    pub fn write(&self) -> String {
        let mut out = format!("witness {}\n", self.kind);
        for (name, item) in &self.items {
            out.push_str(&format!("@{name}\n"));
            out.push_str(&item.write());
        }
        out
    }

    /// Parses a bundle. Points are read against the space of the first
    /// clopen, bisection or table in the bundle.
    pub fn parse(text: &str) -> ParseResult<Bundle> {
        let lines = content_lines(text, 1);
        let header = lines.first().ok_or_else(|| eof("missing `witness` header"))?;
        let toks = tokens(header.text);
        if toks.len() != 2 || toks[0] != "witness" {
            return Err(header.err(header.text, "expected `witness <kind>`"));
        }
        let mut bundle = Bundle::new(toks[1]);
        let all: Vec<&str> = text.lines().collect();
        let mut sections: Vec<(String, usize, usize)> = Vec::new();
        for l in &lines[1..] {
            if let Some(name) = l.text.trim().strip_prefix('@') {
                if let Some(last) = sections.last_mut() {
                    last.2 = l.number;
                }
                sections.push((name.to_string(), l.number + 1, all.len() + 1));
            } else if sections.is_empty() {
                return Err(l.err(l.text, "content before the first `@section`"));
            }
        }
        let mut space: Option<SpaceSpec> = None;
        for (name, start, end) in sections {
            let body = all[start - 1..end - 1].join("\n");
            let first = content_lines(&body, start);
            let Some(head) = first.first() else {
                return Err(ParseError {
                    line: start,
                    column: 1,
                    message: format!("section @{name} is empty"),
                });
            };
            let keyword = tokens(head.text)[0];
            let item = match keyword {
                "space" => Item::Clopen(parse_clopen_at(&body, start)?),
                "bisection" => Item::Bisection(parse_cells(&body, start, "bisection")?),
                "table" => Item::Table(parse_table_at(&body, start)?),
                "vpair" => Item::VPair(parse_vpair_at(&body, start)?),
                "value" => Item::Value(head.text.trim()["value".len()..].trim().to_string()),
                "point" => {
                    let sp = space.as_ref().ok_or_else(|| {
                        head.err(head.text, "point section before any spaced section")
                    })?;
                    let body_line = first
                        .get(1)
                        .ok_or_else(|| head.err(head.text, "point section has no point"))?;
                    Item::Point(parse_point(body_line.text, sp).map_err(|mut e| {
                        e.line = body_line.number;
                        e
                    })?)
                }
                other => return Err(head.err(head.text, format!("unknown section type {other:?}"))),
            };
            if space.is_none() {
                space = match &item {
                    Item::Clopen(x) => Some(x.space().clone()),
                    Item::Bisection(b) => Some(b.space().clone()),
                    Item::Table(t) => Some(t.space().clone()),
                    _ => None,
                };
            }
            bundle.items.push((name, item));
        }
        Ok(bundle)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clopen_round_trip() {
        let text = "space n=2 k=2,3 r=2\nroot:1 e,2\nroot:0 01,e\n";
        let x = parse_clopen(text).unwrap();
        let out = write_clopen(&x);
        assert_eq!(out, "space n=2 k=2,3 r=2\nroot:0 01,e\nroot:1 e,2\n");
        assert_eq!(parse_clopen(&out).unwrap(), x);
    }

    #[test]
    fn parse_errors_have_positions() {
        let err = parse_clopen("space n=1 k=2 r=1\nroot:0 02\n").unwrap_err();
        assert_eq!((err.line, err.column), (2, 9));
        let err = parse_clopen("space n=1 k=2 r=1\nroot:3 0\n").unwrap_err();
        assert_eq!(err.line, 2);
        let err = parse_clopen("space n=1 k=2 r=1\nroot:0 0\nroot:0 01\n").unwrap_err();
        assert_eq!(err.line, 3);
        assert!(parse_clopen("table n=1 k=2 r=1\n").is_err());
    }

    #[test]
    fn table_round_trip() {
        let text = "table n=1 k=2 r=1\nroot:0 11 -> root:0 1\nroot:0 0 -> root:0 00\nroot:0 10 -> root:0 01\n";
        let t = parse_table(text).unwrap();
        let out = write_table(&t);
        assert!(out.starts_with("table n=1 k=2 r=1\nroot:0 0 -> root:0 00\n"));
        assert_eq!(parse_table(&out).unwrap(), t);
        assert!(parse_table("table n=1 k=2 r=1\nroot:0 0 -> root:0 1\n").is_err());
    }

    #[test]
    fn point_syntax() {
        let s = SpaceSpec::new(vec![2, 3], 1).unwrap();
        let p = parse_point("root:0 1(0),(12)", &s).unwrap();
        assert_eq!(write_point(&p), "root:0 1(0),(12)");
        assert_eq!(parse_point("1(0),(12)", &s).unwrap(), p);
        assert!(parse_point("1(),(12)", &s).is_err());
        assert!(parse_point("1(0)", &s).is_err());
    }

    #[test]
    fn large_alphabet_letters() {
        let s = SpaceSpec::uniform(1, 12, 1).unwrap();
        let x = parse_clopen("space n=1 k=12 r=1\nroot:0 AB0\n").unwrap();
        assert_eq!(x.bricks()[0].words[0], vec![10, 11, 0]);
        assert_eq!(x.space(), &s);
    }
}
