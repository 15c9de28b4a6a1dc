//! Textual artifact formats: `.dga` algebra documents, `.hgr` homology
//! tables and Γ-table specs.  Every parser reports 1-based line/column
//! positions, and rendered documents re-parse to the same data.
//!
//! Comments start with `#`.  A comment line starting with `#!` is an
//! *annotation*: free text carried along with the document and echoed
//! into reports (the fixtures use these for their provenance notes).

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use wseq_core::abgroup::{parse_group, AbGroup};
use wseq_core::classify::{GammaTable, GammaTableEntry, GradedGroup, TableCondition};
use wseq_core::dga::{AlgElement, DgaError, FreeDGA};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub pos: Pos,
    pub msg: String,
}

impl ParseError {
    fn new(pos: Pos, msg: impl Into<String>) -> Self {
        ParseError { pos, msg: msg.into() }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.pos.line, self.pos.col, self.msg)
    }
}

/* ## tokens ## */

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Name(String),
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Eq,
}

fn show_tok(t: &Tok) -> String {
    match t {
        Tok::Name(n) => format!("'{}'", n),
        Tok::Int(v) => format!("'{}'", v),
        Tok::Plus => "'+'".into(),
        Tok::Minus => "'-'".into(),
        Tok::Star => "'*'".into(),
        Tok::Eq => "'='".into(),
    }
}

#[derive(Debug, Clone)]
struct Sp {
    tok: Tok,
    pos: Pos,
}

fn lex_line(line_no: usize, text: &str) -> Result<Vec<Sp>, ParseError> {
    let b = text.as_bytes();
    let mut i = 0;
    let mut out = Vec::new();
    while i < b.len() {
        let c = b[i];
        if c == b'#' {
            break;
        }
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let pos = Pos { line: line_no, col: i + 1 };
        match c {
            b'+' => {
                out.push(Sp { tok: Tok::Plus, pos });
                i += 1;
            }
            b'-' => {
                out.push(Sp { tok: Tok::Minus, pos });
                i += 1;
            }
            b'*' => {
                out.push(Sp { tok: Tok::Star, pos });
                i += 1;
            }
            b'=' => {
                out.push(Sp { tok: Tok::Eq, pos });
                i += 1;
            }
            b'0'..=b'9' => {
                let s = i;
                while i < b.len() && b[i].is_ascii_digit() {
                    i += 1;
                }
                let v: BigInt = text[s..i].parse().expect("digits");
                out.push(Sp { tok: Tok::Int(v), pos });
            }
            c if c == b'_' || c.is_ascii_alphabetic() => {
                let s = i;
                while i < b.len() && (b[i] == b'_' || b[i].is_ascii_alphanumeric()) {
                    i += 1;
                }
                out.push(Sp { tok: Tok::Name(text[s..i].to_string()), pos });
            }
            _ => {
                let ch = text[i..].chars().next().expect("in range");
                return Err(ParseError::new(pos, format!("unexpected character '{}'", ch)));
            }
        }
    }
    Ok(out)
}

/* ## .dga documents ## */

/// One additive term of a differential value: signed coefficient plus the
/// generator names of the word (empty word = the constant `0`).
#[derive(Debug, Clone, PartialEq)]
pub struct DgaTerm {
    pub coeff: BigInt,
    pub word: Vec<(String, Pos)>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct DgaDocument {
    pub generators: Vec<(String, usize, Pos)>,
    pub diffs: Vec<(String, Vec<DgaTerm>, Pos)>,
    pub annotations: Vec<String>,
}

fn expect_name(toks: &[Sp], i: usize, what: &str, line_no: usize) -> Result<(String, Pos), ParseError> {
    match toks.get(i) {
        Some(Sp { tok: Tok::Name(n), pos }) => Ok((n.clone(), *pos)),
        Some(sp) => Err(ParseError::new(sp.pos, format!("expected {}, got {}", what, show_tok(&sp.tok)))),
        None => Err(ParseError::new(Pos { line: line_no, col: usize::MAX }, format!("expected {}", what))),
    }
}

fn end_pos(toks: &[Sp], line_no: usize) -> Pos {
    toks.last()
        .map(|s| Pos { line: s.pos.line, col: s.pos.col + 1 })
        .unwrap_or(Pos { line: line_no, col: 1 })
}

/// Grammar: `generator <name> <degree>` and `d <name> = <expr>` lines,
/// where `expr` is `0` or a `+`/`-` separated list of `[k] g1*…*gj`
/// terms.
pub fn parse_dga(text: &str) -> Result<DgaDocument, ParseError> {
    let mut doc = DgaDocument::default();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        if let Some(rest) = raw.trim_start().strip_prefix("#!") {
            doc.annotations.push(rest.trim().to_string());
            continue;
        }
        let toks = lex_line(line_no, raw)?;
        let Some(head) = toks.first() else { continue };
        let Tok::Name(kw) = &head.tok else {
            return Err(ParseError::new(head.pos, "expected 'generator' or 'd'"));
        };
        match kw.as_str() {
            "generator" => {
                let name = expect_name(&toks, 1, "a generator name", line_no)?;
                let deg = match toks.get(2) {
                    Some(Sp { tok: Tok::Int(v), pos }) => {
                        let Some(d) = v.to_string().parse::<usize>().ok() else {
                            return Err(ParseError::new(*pos, "degree out of range"));
                        };
                        d
                    }
                    Some(sp) => {
                        return Err(ParseError::new(sp.pos, format!("expected a degree, got {}", show_tok(&sp.tok))))
                    }
                    None => return Err(ParseError::new(end_pos(&toks, line_no), "expected a degree")),
                };
                if let Some(extra) = toks.get(3) {
                    return Err(ParseError::new(extra.pos, format!("unexpected {}", show_tok(&extra.tok))));
                }
                doc.generators.push((name.0, deg, name.1));
            }
            "d" => {
                let name = expect_name(&toks, 1, "a generator name", line_no)?;
                match toks.get(2) {
                    Some(Sp { tok: Tok::Eq, .. }) => {}
                    Some(sp) => {
                        return Err(ParseError::new(sp.pos, format!("expected '=', got {}", show_tok(&sp.tok))))
                    }
                    None => return Err(ParseError::new(end_pos(&toks, line_no), "expected '='")),
                }
                let terms = parse_expr(&toks[3..], end_pos(&toks, line_no))?;
                doc.diffs.push((name.0, terms, head.pos));
            }
            other => {
                return Err(ParseError::new(head.pos, format!("unknown directive '{}'", other)))
            }
        }
    }
    Ok(doc)
}

fn parse_expr(toks: &[Sp], line_end: Pos) -> Result<Vec<DgaTerm>, ParseError> {
    if toks.is_empty() {
        return Err(ParseError::new(line_end, "expected an expression"));
    }
    let mut out = Vec::new();
    let mut i = 0;
    let mut sign = BigInt::from(1);
    if matches!(toks[0].tok, Tok::Minus) {
        sign = BigInt::from(-1);
        i = 1;
    }
    loop {
        let mut coeff: Option<BigInt> = None;
        if let Some(Sp { tok: Tok::Int(v), .. }) = toks.get(i) {
            coeff = Some(v.clone());
            i += 1;
        }
        let mut word: Vec<(String, Pos)> = Vec::new();
        if let Some(Sp { tok: Tok::Name(n), pos }) = toks.get(i) {
            word.push((n.clone(), *pos));
            i += 1;
            while matches!(toks.get(i).map(|s| &s.tok), Some(Tok::Star)) {
                i += 1;
                match toks.get(i) {
                    Some(Sp { tok: Tok::Name(n), pos }) => {
                        word.push((n.clone(), *pos));
                        i += 1;
                    }
                    Some(sp) => {
                        return Err(ParseError::new(
                            sp.pos,
                            format!("expected a generator name after '*', got {}", show_tok(&sp.tok)),
                        ))
                    }
                    None => {
                        return Err(ParseError::new(line_end, "expected a generator name after '*'"))
                    }
                }
            }
        }
        match (&coeff, word.is_empty()) {
            (None, true) => {
                let at = toks.get(i).map(|s| s.pos).unwrap_or(line_end);
                return Err(ParseError::new(at, "expected a term"));
            }
            (Some(c), true) if !c.is_zero() => {
                let at = toks.get(i).map(|s| s.pos).unwrap_or(line_end);
                return Err(ParseError::new(at, "a bare integer term must be 0"));
            }
            _ => {}
        }
        out.push(DgaTerm {
            coeff: sign.clone() * coeff.unwrap_or_else(|| BigInt::from(1)),
            word,
        });
        match toks.get(i) {
            None => break,
            Some(sp) => match &sp.tok {
                Tok::Plus => {
                    sign = BigInt::from(1);
                    i += 1;
                }
                Tok::Minus => {
                    sign = BigInt::from(-1);
                    i += 1;
                }
                t => return Err(ParseError::new(sp.pos, format!("unexpected {}", show_tok(t)))),
            },
        }
    }
    Ok(out)
}

/// Builds and validates the algebra; diagnostics carry the position of
/// the offending token or statement.
pub fn build_dga(doc: &DgaDocument) -> Result<FreeDGA, ParseError> {
    let mut d = FreeDGA::new();
    for (name, deg, pos) in &doc.generators {
        d.add_generator(name, *deg)
            .map_err(|e| ParseError::new(*pos, e.to_string()))?;
    }
    let mut seen: BTreeSet<&str> = BTreeSet::new();
    for (name, terms, pos) in &doc.diffs {
        if !seen.insert(name.as_str()) {
            return Err(ParseError::new(*pos, format!("differential for '{}' assigned twice", name)));
        }
        if d.gen_id(name).is_none() {
            return Err(ParseError::new(*pos, format!("unknown generator {}", name)));
        }
        let mut val = AlgElement::zero();
        for t in terms {
            if t.word.is_empty() {
                continue;
            }
            let mut ids = Vec::new();
            for (gname, gpos) in &t.word {
                let id = d
                    .gen_id(gname)
                    .ok_or_else(|| ParseError::new(*gpos, format!("unknown generator {}", gname)))?;
                ids.push(id);
            }
            val = val.add(&AlgElement::term(t.coeff.clone(), ids));
        }
        d.set_diff(name, val)
            .map_err(|e| ParseError::new(*pos, e.to_string()))?;
    }
    if let Err(e) = d.validate() {
        let pos = match &e {
            DgaError::SquareNotZero(n) => doc
                .diffs
                .iter()
                .find(|(name, _, _)| name == n)
                .map(|&(_, _, p)| p),
            _ => None,
        }
        .unwrap_or(Pos { line: 1, col: 1 });
        return Err(ParseError::new(pos, e.to_string()));
    }
    Ok(d)
}

/// The canonical text for an algebra: declarations in order, then one
/// `d` line per generator.  Output re-parses to an equal algebra.
pub fn render_dga(d: &FreeDGA, header: &[String]) -> String {
    let mut out = String::new();
    for h in header {
        out.push_str("# ");
        out.push_str(h);
        out.push('\n');
    }
    for g in d.generators() {
        out.push_str(&format!("generator {} {}\n", g.name, g.degree));
    }
    for (id, g) in d.generators().iter().enumerate() {
        out.push_str(&format!("d {} = {}\n", g.name, d.render_element(d.diff_of(id))));
    }
    out
}

/* ## .hgr homology tables ## */

fn field_cols(s: &str, line_no: usize, base: usize) -> Vec<(String, Pos)> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        if ch.is_whitespace() {
            if !cur.is_empty() {
                out.push((cur.clone(), Pos { line: line_no, col: base + start + 1 }));
                cur.clear();
            }
        } else {
            if cur.is_empty() {
                start = i;
            }
            cur.push(ch);
        }
    }
    if !cur.is_empty() {
        out.push((cur, Pos { line: line_no, col: base + start + 1 }));
    }
    out
}

fn strip_comment(raw: &str) -> &str {
    match raw.find('#') {
        Some(i) => &raw[..i],
        None => raw,
    }
}

/// Grammar: `H <n> = <group literal>` lines, one per degree.
pub fn parse_hgr(text: &str) -> Result<(GradedGroup, Vec<String>), ParseError> {
    let mut h = GradedGroup::new();
    let mut notes = Vec::new();
    let mut seen: BTreeSet<usize> = BTreeSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        if let Some(rest) = raw.trim_start().strip_prefix("#!") {
            notes.push(rest.trim().to_string());
            continue;
        }
        let body = strip_comment(raw);
        if body.trim().is_empty() {
            continue;
        }
        let line_pos = Pos { line: line_no, col: body.len() - body.trim_start().len() + 1 };
        let Some((left, right)) = body.split_once('=') else {
            return Err(ParseError::new(line_pos, "expected 'H <n> = <group>'"));
        };
        let fields = field_cols(left, line_no, 0);
        if fields.len() != 2 || fields[0].0 != "H" {
            return Err(ParseError::new(line_pos, "expected 'H <n> = <group>'"));
        }
        let n: usize = fields[1]
            .0
            .parse()
            .map_err(|_| ParseError::new(fields[1].1, format!("bad degree '{}'", fields[1].0)))?;
        if !seen.insert(n) {
            return Err(ParseError::new(fields[1].1, format!("degree {} listed twice", n)));
        }
        let lit_pos = Pos { line: line_no, col: left.len() + 2 };
        let g = parse_group(right).map_err(|e| ParseError::new(lit_pos, e.to_string()))?;
        h.set(n, g).map_err(|e| ParseError::new(fields[1].1, e.to_string()))?;
    }
    Ok((h, notes))
}

/* ## Γ-table specs ## */

/// Grammar: unconditional lines `gamma <n> = <group literal>` and
/// conditional lines `gamma <n> if b<m> = <value-index> -> <group
/// literal>`; the value index counts through the canonical ordering of
/// the stage-`m` choices.
pub fn parse_gamma_table(text: &str) -> Result<(GammaTable, Vec<String>), ParseError> {
    let mut entries = Vec::new();
    let mut notes = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        if let Some(rest) = raw.trim_start().strip_prefix("#!") {
            notes.push(rest.trim().to_string());
            continue;
        }
        let body = strip_comment(raw);
        if body.trim().is_empty() {
            continue;
        }
        let line_pos = Pos { line: line_no, col: body.len() - body.trim_start().len() + 1 };
        let (left, lit, cond) = match body.find("->") {
            Some(a) => (&body[..a], &body[a + 2..], true),
            None => match body.find('=') {
                Some(e) => (&body[..e], &body[e + 1..], false),
                None => return Err(ParseError::new(line_pos, "expected 'gamma <n> = <group>'")),
            },
        };
        let fields = field_cols(left, line_no, 0);
        if fields.is_empty() || fields[0].0 != "gamma" {
            return Err(ParseError::new(line_pos, "expected 'gamma'"));
        }
        let degree: usize = match fields.get(1) {
            Some((s, p)) => s
                .parse()
                .map_err(|_| ParseError::new(*p, format!("bad degree '{}'", s)))?,
            None => return Err(ParseError::new(line_pos, "expected a degree after 'gamma'")),
        };
        let condition = if cond {
            // gamma <n> if b<m> = <idx>
            if fields.len() != 6 || fields[2].0 != "if" || fields[4].0 != "=" {
                return Err(ParseError::new(
                    line_pos,
                    "expected 'gamma <n> if b<m> = <index> -> <group>'",
                ));
            }
            let stage: usize = fields[3]
                .0
                .strip_prefix('b')
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| {
                    ParseError::new(fields[3].1, format!("expected 'b<m>', got '{}'", fields[3].0))
                })?;
            let value_index: usize = fields[5]
                .0
                .parse()
                .map_err(|_| ParseError::new(fields[5].1, format!("bad value index '{}'", fields[5].0)))?;
            Some(TableCondition { stage, value_index })
        } else {
            if fields.len() != 2 {
                return Err(ParseError::new(line_pos, "expected 'gamma <n> = <group>'"));
            }
            None
        };
        let lit_pos = Pos { line: line_no, col: body.len() - lit.len() + 1 };
        let group = parse_group(lit).map_err(|e| ParseError::new(lit_pos, e.to_string()))?;
        entries.push(GammaTableEntry { degree, condition, group });
    }
    Ok((GammaTable { entries }, notes))
}

/* ## group rendering ## */

/// Compact group literal: `0`, `Z`, `Z^r`, `Zd`, joined with ` + `.
/// Re-parses to the same group.
pub fn render_group(g: &AbGroup) -> String {
    if g.is_trivial() {
        return "0".into();
    }
    let mut parts = Vec::new();
    match g.free_rank() {
        0 => {}
        1 => parts.push("Z".to_string()),
        r => parts.push(format!("Z^{}", r)),
    }
    for t in g.torsion() {
        parts.push(format!("Z{}", t));
    }
    parts.join(" + ")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pos_of(r: Result<DgaDocument, ParseError>) -> Pos {
        r.expect_err("should fail").pos
    }

    #[test]
    fn lex_rejects_stray_characters() {
        let e = parse_dga("generator a 1\nd a = ?\n").expect_err("bad char");
        assert_eq!(e.pos, Pos { line: 2, col: 7 });
        assert!(e.msg.contains("unexpected character '?'"), "{}", e.msg);
    }

    #[test]
    fn parse_errors_carry_exact_positions() {
        assert_eq!(pos_of(parse_dga("generator a x\n")), Pos { line: 1, col: 13 });
        assert_eq!(pos_of(parse_dga("generator a 2 junk\n")), Pos { line: 1, col: 15 });
        assert_eq!(pos_of(parse_dga("\nfrobnicate a\n")), Pos { line: 2, col: 1 });
        assert_eq!(pos_of(parse_dga("generator a 1\nd a 2\n")), Pos { line: 2, col: 5 });
        let e = parse_dga("generator a 1\nd a =\n").expect_err("empty rhs");
        assert_eq!(e.pos.line, 2);
        assert!(e.msg.contains("expected an expression"), "{}", e.msg);
    }

    #[test]
    fn bare_integer_terms_must_be_zero() {
        let e = parse_dga("generator a 1\nd a = 3\n").expect_err("bare 3");
        assert!(e.msg.contains("must be 0"), "{}", e.msg);
        let doc = parse_dga("generator a 1\nd a = 0\n").unwrap();
        assert_eq!(doc.diffs[0].1, vec![DgaTerm { coeff: BigInt::from(0), word: vec![] }]);
        assert!(build_dga(&doc).is_ok());
    }

    #[test]
    fn unknown_name_in_expression_is_reported_at_its_token() {
        // the error lands on `q`, not on the statement head
        let text = "generator a 1\ngenerator c 3\nd c = 2 a*a + q\n";
        let doc = parse_dga(text).unwrap();
        let e = build_dga(&doc).expect_err("unknown q");
        assert_eq!(e.pos, Pos { line: 3, col: 15 });
        assert!(e.msg.contains("unknown generator q"), "{}", e.msg);
    }

    #[test]
    fn duplicate_diff_lines_are_rejected() {
        let text = "generator a 1\ngenerator b 2\nd b = a\nd b = 2 a\n";
        let e = build_dga(&parse_dga(text).unwrap()).expect_err("dup");
        assert_eq!(e.pos, Pos { line: 4, col: 1 });
        assert!(e.msg.contains("assigned twice"), "{}", e.msg);
    }

    #[test]
    fn square_not_zero_points_at_the_bad_statement() {
        let text = "generator a 1\ngenerator b 2\ngenerator c 3\nd b = a\nd c = b\n";
        let e = build_dga(&parse_dga(text).unwrap()).expect_err("d^2");
        assert_eq!(e.pos, Pos { line: 5, col: 1 });
        assert!(e.msg.contains("∂²"), "{}", e.msg);
    }

    #[test]
    fn degree_mismatch_is_rejected_with_position() {
        // a has degree 1, so `d b = a*a` lands in degree 2, not 2-1
        let text = "generator a 1\ngenerator b 2\nd b = a*a\n";
        let e = build_dga(&parse_dga(text).unwrap()).expect_err("degree");
        assert_eq!(e.pos.line, 3);
    }

    #[test]
    fn signs_and_coefficients_parse() {
        let doc = parse_dga("generator a 1\ngenerator b 2\nd b = -2 a + a - a\n").unwrap();
        let terms = &doc.diffs[0].1;
        let coeffs: Vec<i32> = terms
            .iter()
            .map(|t| i32::try_from(&t.coeff).unwrap())
            .collect();
        assert_eq!(coeffs, vec![-2, 1, -1]);
        let d = build_dga(&doc).unwrap();
        // -2a + a - a = -2a
        assert_eq!(d.render_element(d.diff_of(d.gen_id("b").unwrap())), "-2 a");
    }

    #[test]
    fn annotations_are_collected_not_parsed() {
        let doc = parse_dga("#! first note\ngenerator a 1\n  #! second\n# plain comment\n").unwrap();
        assert_eq!(doc.annotations, vec!["first note".to_string(), "second".to_string()]);
        assert_eq!(doc.generators.len(), 1);
    }

    fn fixture(name: &str) -> String {
        let p = format!("{}/../../fixtures/{}", env!("CARGO_MANIFEST_DIR"), name);
        std::fs::read_to_string(p).unwrap()
    }

    #[test]
    fn fixtures_round_trip_through_render() {
        for f in [
            "ex39_partial.dga",
            "ex39_delta.dga",
            "ex39_psi.dga",
            "ex39_partial_printed.dga",
            "ex39_delta_printed.dga",
        ] {
            let d = build_dga(&parse_dga(&fixture(f)).unwrap()).unwrap();
            let text = render_dga(&d, &["header line".into()]);
            let d2 = build_dga(&parse_dga(&text).unwrap()).unwrap();
            assert_eq!(render_dga(&d, &[]), render_dga(&d2, &[]), "{}", f);
        }
    }

    #[test]
    fn hgr_parses_the_eight_degree_table() {
        let (h, notes) = parse_hgr(&fixture("example25.hgr")).unwrap();
        assert_eq!(h.get(3), parse_group("Z2").unwrap());
        assert_eq!(h.get(8), parse_group("Z4").unwrap());
        assert_eq!(h.get(10), parse_group("Z").unwrap());
        assert_eq!(h.get(2), parse_group("0").unwrap());
        assert!(!notes.is_empty());
    }

    #[test]
    fn hgr_rejects_duplicates_and_bad_lines() {
        let e = parse_hgr("H 3 = Z2\nH 3 = Z4\n").expect_err("dup");
        assert_eq!(e.pos, Pos { line: 2, col: 3 });
        assert!(parse_hgr("H = Z2\n").is_err());
        assert!(parse_hgr("G 3 = Z2\n").is_err());
        let e = parse_hgr("H 4 = Zx\n").expect_err("bad literal");
        assert_eq!(e.pos.line, 1);
    }

    #[test]
    fn gamma_table_parses_conditionals() {
        let (t, notes) = parse_gamma_table(&fixture("example25.gtab")).unwrap();
        assert!(!notes.is_empty());
        let cond: Vec<_> = t.entries.iter().filter(|e| e.condition.is_some()).collect();
        assert_eq!(cond.len(), 2);
        assert!(cond.iter().all(|e| e.degree == 9));
        assert_eq!(cond[0].condition.as_ref().unwrap().stage, 7);
        let uncond: Vec<_> = t.entries.iter().filter(|e| e.condition.is_none()).collect();
        assert!(uncond.iter().any(|e| e.degree == 6 && e.group == parse_group("Z2").unwrap()));
    }

    #[test]
    fn gamma_table_rejects_malformed_conditionals() {
        assert!(parse_gamma_table("gamma 9 if q7 = 0 -> Z2\n").is_err());
        assert!(parse_gamma_table("gamma 9 if b7 = x -> Z2\n").is_err());
        assert!(parse_gamma_table("gamma = Z2\n").is_err());
        assert!(parse_gamma_table("gamma 9 if b7 = 0 Z2\n").is_err());
    }

    #[test]
    fn group_literals_round_trip() {
        for s in ["0", "Z", "Z^2", "Z4", "Z + Z2 + Z4", "Z^3 + Z2"] {
            let g = parse_group(s).unwrap();
            assert_eq!(render_group(&g), s);
            assert_eq!(parse_group(&render_group(&g)).unwrap(), g);
        }
    }
}
