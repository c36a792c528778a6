//! Text format for categories and the structure on them.
//!
//! ```text
//! # comments run to end of line
//! category B3 {
//!   objects: x;
//!   morphisms: g0: x -> x; g1: x -> x; g2: x -> x;
//!   identities: x = g0;            # optional; units are detected from a
//!                                  # complete compose table when absent
//!   compose: g1 . g1 = g2; ...     # g . f means "g after f"
//! }
//! dagger neg on B3 { g0 -> g0; g1 -> g2; g2 -> g1; }
//! involution T on B3 {
//!   d: x => x; g0 => g0, g1 => g2, g2 => g1;
//!   eta: x => g0;
//! }
//! positivity P on T { x: { g0 }; }
//! functor F from B3 to B3 { objects: x => x; morphisms: g0 => g0; ... }
//! ```
//!
//! Identities may also be left undeclared entirely, in which case a fresh
//! `id_<object>` morphism is added per object. The printer always emits the
//! `identities:` section and a full non-identity compose table, sorted, so
//! printing is canonical: `parse(print(doc)) == doc`.

use std::collections::{HashMap, HashSet};
use std::fmt;

use thiserror::Error;

use crate::cat::{FiniteCategory, FunctorData, Morphism};
use crate::dagger::DaggerStructure;
use crate::herm::PositivityNotion;
use crate::involutive::AntiInvolutiveCategory;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{code} at {line}:{col}: {message}")]
pub struct ParseError {
    /// Stable diagnostic code (`E_TOKEN`, `E_DUP`, `E_REF`, `E_LAW`, ...).
    pub code: &'static str,
    pub line: usize,
    pub col: usize,
    pub message: String,
}

fn err<T>(code: &'static str, pos: (usize, usize), message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { code, line: pos.0, col: pos.1, message: message.into() })
}

/// Everything declared in one file, fully validated.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Document {
    pub categories: Vec<(String, FiniteCategory)>,
    /// (name, category name, structure)
    pub daggers: Vec<(String, String, DaggerStructure)>,
    pub involutions: Vec<(String, String, AntiInvolutiveCategory)>,
    /// (name, involution name, notion)
    pub positivities: Vec<(String, String, PositivityNotion)>,
    /// (name, source category, target category, data)
    pub functors: Vec<(String, String, String, FunctorData)>,
}

impl Document {
    pub fn category(&self, name: &str) -> Option<&FiniteCategory> {
        self.categories.iter().find(|(n, _)| n == name).map(|(_, c)| c)
    }
    pub fn dagger(&self, name: &str) -> Option<&DaggerStructure> {
        self.daggers.iter().find(|(n, _, _)| n == name).map(|(_, _, d)| d)
    }
    pub fn involution(&self, name: &str) -> Option<&AntiInvolutiveCategory> {
        self.involutions.iter().find(|(n, _, _)| n == name).map(|(_, _, a)| a)
    }
    pub fn positivity(&self, name: &str) -> Option<(&str, &PositivityNotion)> {
        self.positivities
            .iter()
            .find(|(n, _, _)| n == name)
            .map(|(_, on, p)| (on.as_str(), p))
    }
    pub fn functor(&self, name: &str) -> Option<&(String, String, String, FunctorData)> {
        self.functors.iter().find(|(n, _, _, _)| n == name)
    }
}

// ---------------------------------------------------------------- tokens

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Word(String),
    LBrace,
    RBrace,
    Colon,
    Semi,
    Dot,
    Comma,
    Eq,
    Arrow,   // ->
    FatArrow, // =>
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Word(w) => write!(f, "`{w}`"),
            Tok::LBrace => write!(f, "`{{`"),
            Tok::RBrace => write!(f, "`}}`"),
            Tok::Colon => write!(f, "`:`"),
            Tok::Semi => write!(f, "`;`"),
            Tok::Dot => write!(f, "`.`"),
            Tok::Comma => write!(f, "`,`"),
            Tok::Eq => write!(f, "`=`"),
            Tok::Arrow => write!(f, "`->`"),
            Tok::FatArrow => write!(f, "`=>`"),
        }
    }
}

fn tokenize(src: &str) -> Result<Vec<(Tok, (usize, usize))>, ParseError> {
    let mut out = Vec::new();
    for (li, line) in src.lines().enumerate() {
        let bytes: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i];
            let pos = (li + 1, i + 1);
            match c {
                '#' => break,
                c if c.is_whitespace() => i += 1,
                '{' => { out.push((Tok::LBrace, pos)); i += 1 }
                '}' => { out.push((Tok::RBrace, pos)); i += 1 }
                ':' => { out.push((Tok::Colon, pos)); i += 1 }
                ';' => { out.push((Tok::Semi, pos)); i += 1 }
                '.' => { out.push((Tok::Dot, pos)); i += 1 }
                ',' => { out.push((Tok::Comma, pos)); i += 1 }
                '=' if bytes.get(i + 1) == Some(&'>') => { out.push((Tok::FatArrow, pos)); i += 2 }
                '=' => { out.push((Tok::Eq, pos)); i += 1 }
                '-' if bytes.get(i + 1) == Some(&'>') => { out.push((Tok::Arrow, pos)); i += 2 }
                c if c.is_ascii_alphanumeric() || c == '_' => {
                    let start = i;
                    while i < bytes.len()
                        && (bytes[i].is_ascii_alphanumeric() || bytes[i] == '_')
                    {
                        i += 1;
                    }
                    out.push((Tok::Word(bytes[start..i].iter().collect()), pos));
                }
                other => return err("E_CHAR", pos, format!("unexpected character `{other}`")),
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------- parser

struct P {
    toks: Vec<(Tok, (usize, usize))>,
    i: usize,
}

impl P {
    fn pos(&self) -> (usize, usize) {
        self.toks.get(self.i).map(|t| t.1).unwrap_or_else(|| {
            self.toks.last().map(|t| t.1).unwrap_or((1, 1))
        })
    }
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|t| &t.0)
    }
    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.i).map(|t| t.0.clone());
        if t.is_some() {
            self.i += 1;
        }
        t
    }
    fn expect(&mut self, want: Tok) -> Result<(), ParseError> {
        let pos = self.pos();
        match self.next() {
            Some(t) if t == want => Ok(()),
            Some(t) => err("E_TOKEN", pos, format!("expected {want}, found {t}")),
            None => err("E_TOKEN", pos, format!("expected {want}, found end of input")),
        }
    }
    fn word(&mut self) -> Result<String, ParseError> {
        let pos = self.pos();
        match self.next() {
            Some(Tok::Word(w)) => Ok(w),
            Some(t) => err("E_TOKEN", pos, format!("expected a name, found {t}")),
            None => err("E_TOKEN", pos, "expected a name, found end of input"),
        }
    }
    fn keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        let pos = self.pos();
        let w = self.word()?;
        if w == kw {
            Ok(())
        } else {
            err("E_TOKEN", pos, format!("expected `{kw}`, found `{w}`"))
        }
    }
    fn at_word(&self, kw: &str) -> bool {
        matches!(self.peek(), Some(Tok::Word(w)) if w == kw)
    }
}

/// Parses and validates a whole file.
pub fn parse(src: &str) -> Result<Document, ParseError> {
    let mut p = P { toks: tokenize(src)?, i: 0 };
    let mut doc = Document::default();
    let mut names: HashSet<String> = HashSet::new();
    while let Some(Tok::Word(kw)) = p.peek().cloned() {
        let block_pos = p.pos();
        match kw.as_str() {
            "category" => {
                let (name, cat) = parse_category(&mut p)?;
                if !names.insert(name.clone()) {
                    return err("E_DUP", block_pos, format!("duplicate name `{name}`"));
                }
                doc.categories.push((name, cat));
            }
            "dagger" => {
                let (name, on, dag) = parse_dagger(&mut p, &doc)?;
                if !names.insert(name.clone()) {
                    return err("E_DUP", block_pos, format!("duplicate name `{name}`"));
                }
                doc.daggers.push((name, on, dag));
            }
            "involution" => {
                let (name, on, inv) = parse_involution(&mut p, &doc)?;
                if !names.insert(name.clone()) {
                    return err("E_DUP", block_pos, format!("duplicate name `{name}`"));
                }
                doc.involutions.push((name, on, inv));
            }
            "positivity" => {
                let (name, on, pos) = parse_positivity(&mut p, &doc)?;
                if !names.insert(name.clone()) {
                    return err("E_DUP", block_pos, format!("duplicate name `{name}`"));
                }
                doc.positivities.push((name, on, pos));
            }
            "functor" => {
                let (name, from, to, f) = parse_functor(&mut p, &doc)?;
                if !names.insert(name.clone()) {
                    return err("E_DUP", block_pos, format!("duplicate name `{name}`"));
                }
                doc.functors.push((name, from, to, f));
            }
            other => {
                return err("E_TOKEN", block_pos, format!("expected a block keyword, found `{other}`"))
            }
        }
    }
    if p.peek().is_some() {
        return err("E_TOKEN", p.pos(), "expected a block keyword");
    }
    Ok(doc)
}

fn parse_category(p: &mut P) -> Result<(String, FiniteCategory), ParseError> {
    p.keyword("category")?;
    let name = p.word()?;
    let block_pos = p.pos();
    p.expect(Tok::LBrace)?;

    p.keyword("objects")?;
    p.expect(Tok::Colon)?;
    let mut objects: Vec<String> = Vec::new();
    while let Some(Tok::Word(_)) = p.peek() {
        objects.push(p.word()?);
    }
    p.expect(Tok::Semi)?;
    let obj_index: HashMap<&str, usize> =
        objects.iter().enumerate().map(|(i, o)| (o.as_str(), i)).collect();
    if obj_index.len() != objects.len() {
        return err("E_DUP", block_pos, "duplicate object name");
    }

    p.keyword("morphisms")?;
    p.expect(Tok::Colon)?;
    let mut morphisms: Vec<Morphism> = Vec::new();
    loop {
        if !matches!(p.peek(), Some(Tok::Word(w)) if !is_section(w) || peek_is_decl(p)) {
            break;
        }
        let mpos = p.pos();
        let mname = p.word()?;
        p.expect(Tok::Colon)?;
        let dom = p.word()?;
        p.expect(Tok::Arrow)?;
        let cod = p.word()?;
        p.expect(Tok::Semi)?;
        let &dom = obj_index
            .get(dom.as_str())
            .ok_or(ParseError { code: "E_REF", line: mpos.0, col: mpos.1, message: format!("unknown object `{dom}`") })?;
        let &cod = obj_index
            .get(cod.as_str())
            .ok_or(ParseError { code: "E_REF", line: mpos.0, col: mpos.1, message: format!("unknown object `{cod}`") })?;
        morphisms.push(Morphism::new(mname, dom, cod));
    }
    let mut mor_index: HashMap<String, usize> = HashMap::new();
    for (i, m) in morphisms.iter().enumerate() {
        if mor_index.insert(m.name.clone(), i).is_some() {
            return err("E_DUP", block_pos, format!("duplicate morphism name `{}`", m.name));
        }
    }

    // optional identities section: object = morphism
    let mut declared_ids: Vec<Option<usize>> = vec![None; objects.len()];
    let mut had_identities = false;
    if p.at_word("identities") {
        had_identities = true;
        p.keyword("identities")?;
        p.expect(Tok::Colon)?;
        while matches!(p.peek(), Some(Tok::Word(w)) if *w != "compose") {
            let epos = p.pos();
            let o = p.word()?;
            p.expect(Tok::Eq)?;
            let m = p.word()?;
            p.expect(Tok::Semi)?;
            let &oi = obj_index
                .get(o.as_str())
                .ok_or(ParseError { code: "E_REF", line: epos.0, col: epos.1, message: format!("unknown object `{o}`") })?;
            let &mi = mor_index
                .get(m.as_str())
                .ok_or(ParseError { code: "E_REF", line: epos.0, col: epos.1, message: format!("unknown morphism `{m}`") })?;
            declared_ids[oi] = Some(mi);
        }
    }

    let mut pairs: Vec<(usize, usize, usize)> = Vec::new();
    if p.at_word("compose") {
        p.keyword("compose")?;
        p.expect(Tok::Colon)?;
        while let Some(Tok::Word(_)) = p.peek() {
            let epos = p.pos();
            let g = p.word()?;
            p.expect(Tok::Dot)?;
            let f = p.word()?;
            p.expect(Tok::Eq)?;
            let h = p.word()?;
            p.expect(Tok::Semi)?;
            let look = |n: &str| {
                mor_index.get(n).copied().ok_or(ParseError {
                    code: "E_REF",
                    line: epos.0,
                    col: epos.1,
                    message: format!("unknown morphism `{n}`"),
                })
            };
            pairs.push((look(&g)?, look(&f)?, look(&h)?));
        }
    }
    p.expect(Tok::RBrace)?;

    // resolve identities: declared section, then unit detection from the
    // declared table, then fresh id_<object> morphisms
    let mut identities: Vec<usize> = Vec::with_capacity(objects.len());
    for (oi, slot) in declared_ids.iter().enumerate() {
        if let Some(mi) = slot {
            identities.push(*mi);
            continue;
        }
        if had_identities {
            return err(
                "E_LAW",
                block_pos,
                format!("identities section misses object `{}`", objects[oi]),
            );
        }
        let endos: Vec<usize> = (0..morphisms.len())
            .filter(|&i| morphisms[i].dom == oi && morphisms[i].cod == oi)
            .collect();
        let unit = endos.iter().copied().find(|&e| {
            (0..morphisms.len()).all(|f| {
                let left_ok = morphisms[f].cod != oi
                    || pairs.iter().any(|&(g2, f2, h2)| g2 == e && f2 == f && h2 == f);
                let right_ok = morphisms[f].dom != oi
                    || pairs.iter().any(|&(g2, f2, h2)| g2 == f && f2 == e && h2 == f);
                left_ok && right_ok
            })
        });
        match unit {
            Some(e) => identities.push(e),
            None => {
                // fresh identity morphism
                let fresh = format!("id_{}", objects[oi]);
                if mor_index.contains_key(&fresh) {
                    return err(
                        "E_LAW",
                        block_pos,
                        format!("`{fresh}` exists but is not declared as an identity"),
                    );
                }
                mor_index.insert(fresh.clone(), morphisms.len());
                identities.push(morphisms.len());
                morphisms.push(Morphism::new(fresh, oi, oi));
            }
        }
    }

    match FiniteCategory::validate(objects, morphisms, identities, &pairs) {
        Ok(cat) => Ok((name, cat)),
        Err(report) => err("E_LAW", block_pos, format!("category `{name}` is invalid:\n{report}")),
    }
}

fn is_section(w: &str) -> bool {
    matches!(w, "identities" | "compose")
}

// a morphism may be named like a section keyword; it is a declaration iff
// the next token is `:` followed by a word (sections are `keyword :` too,
// so require the shape `name : word -> word`)
fn peek_is_decl(p: &P) -> bool {
    matches!(p.toks.get(p.i + 1).map(|t| &t.0), Some(Tok::Colon))
        && matches!(p.toks.get(p.i + 3).map(|t| &t.0), Some(Tok::Arrow))
}

fn parse_dagger(p: &mut P, doc: &Document) -> Result<(String, String, DaggerStructure), ParseError> {
    p.keyword("dagger")?;
    let name = p.word()?;
    let on_pos = p.pos();
    p.keyword("on")?;
    let on = p.word()?;
    let cat = doc
        .category(&on)
        .ok_or(ParseError { code: "E_REF", line: on_pos.0, col: on_pos.1, message: format!("unknown category `{on}`") })?
        .clone();
    let block_pos = p.pos();
    p.expect(Tok::LBrace)?;
    let mut dag: Vec<Option<usize>> = vec![None; cat.n_morphisms()];
    while let Some(Tok::Word(_)) = p.peek() {
        let epos = p.pos();
        let f = p.word()?;
        p.expect(Tok::Arrow)?;
        let g = p.word()?;
        p.expect(Tok::Semi)?;
        let fi = cat.morphism_index(&f).ok_or(ParseError {
            code: "E_REF", line: epos.0, col: epos.1, message: format!("unknown morphism `{f}`"),
        })?;
        let gi = cat.morphism_index(&g).ok_or(ParseError {
            code: "E_REF", line: epos.0, col: epos.1, message: format!("unknown morphism `{g}`"),
        })?;
        dag[fi] = Some(gi);
    }
    p.expect(Tok::RBrace)?;
    let dag: Vec<usize> = dag
        .into_iter()
        .enumerate()
        .map(|(i, v)| {
            v.ok_or(ParseError {
                code: "E_LAW",
                line: block_pos.0,
                col: block_pos.1,
                message: format!("dagger misses morphism `{}`", cat.morphism(i).name),
            })
        })
        .collect::<Result<_, _>>()?;
    match DaggerStructure::validate(cat, dag) {
        Ok(d) => Ok((name, on, d)),
        Err(report) => err("E_LAW", block_pos, format!("dagger `{name}` is invalid:\n{report}")),
    }
}

fn parse_involution(
    p: &mut P,
    doc: &Document,
) -> Result<(String, String, AntiInvolutiveCategory), ParseError> {
    p.keyword("involution")?;
    let name = p.word()?;
    let on_pos = p.pos();
    p.keyword("on")?;
    let on = p.word()?;
    let cat = doc
        .category(&on)
        .ok_or(ParseError { code: "E_REF", line: on_pos.0, col: on_pos.1, message: format!("unknown category `{on}`") })?
        .clone();
    let block_pos = p.pos();
    p.expect(Tok::LBrace)?;
    p.keyword("d")?;
    p.expect(Tok::Colon)?;
    let mut d_obj: Vec<Option<usize>> = vec![None; cat.n_objects()];
    loop {
        let epos = p.pos();
        let a = p.word()?;
        p.expect(Tok::FatArrow)?;
        let b = p.word()?;
        let ai = cat.object_index(&a).ok_or(ParseError {
            code: "E_REF", line: epos.0, col: epos.1, message: format!("unknown object `{a}`"),
        })?;
        let bi = cat.object_index(&b).ok_or(ParseError {
            code: "E_REF", line: epos.0, col: epos.1, message: format!("unknown object `{b}`"),
        })?;
        d_obj[ai] = Some(bi);
        match p.next() {
            Some(Tok::Comma) => continue,
            Some(Tok::Semi) => break,
            _ => return err("E_TOKEN", epos, "expected `,` or `;` in object map"),
        }
    }
    let mut d_mor: Vec<Option<usize>> = vec![None; cat.n_morphisms()];
    loop {
        let epos = p.pos();
        let f = p.word()?;
        p.expect(Tok::FatArrow)?;
        let g = p.word()?;
        let fi = cat.morphism_index(&f).ok_or(ParseError {
            code: "E_REF", line: epos.0, col: epos.1, message: format!("unknown morphism `{f}`"),
        })?;
        let gi = cat.morphism_index(&g).ok_or(ParseError {
            code: "E_REF", line: epos.0, col: epos.1, message: format!("unknown morphism `{g}`"),
        })?;
        d_mor[fi] = Some(gi);
        match p.next() {
            Some(Tok::Comma) => continue,
            Some(Tok::Semi) => break,
            _ => return err("E_TOKEN", epos, "expected `,` or `;` in morphism map"),
        }
    }
    p.keyword("eta")?;
    p.expect(Tok::Colon)?;
    let mut eta: Vec<Option<usize>> = vec![None; cat.n_objects()];
    while let Some(Tok::Word(_)) = p.peek() {
        let epos = p.pos();
        let o = p.word()?;
        p.expect(Tok::FatArrow)?;
        let m = p.word()?;
        p.expect(Tok::Semi)?;
        let oi = cat.object_index(&o).ok_or(ParseError {
            code: "E_REF", line: epos.0, col: epos.1, message: format!("unknown object `{o}`"),
        })?;
        let mi = cat.morphism_index(&m).ok_or(ParseError {
            code: "E_REF", line: epos.0, col: epos.1, message: format!("unknown morphism `{m}`"),
        })?;
        eta[oi] = Some(mi);
    }
    p.expect(Tok::RBrace)?;
    let complete = |v: Vec<Option<usize>>, what: &str| -> Result<Vec<usize>, ParseError> {
        v.into_iter()
            .map(|x| {
                x.ok_or(ParseError {
                    code: "E_LAW",
                    line: block_pos.0,
                    col: block_pos.1,
                    message: format!("involution `{name}` has an incomplete {what} map"),
                })
            })
            .collect()
    };
    let d_obj = complete(d_obj, "object")?;
    let d_mor = complete(d_mor, "morphism")?;
    let eta = complete(eta, "eta")?;
    let d = FunctorData::validate(cat.opposite(), cat.clone(), d_obj, d_mor).map_err(|r| {
        ParseError {
            code: "E_LAW",
            line: block_pos.0,
            col: block_pos.1,
            message: format!("involution `{name}`: d is not a functor C^op -> C:\n{r}"),
        }
    })?;
    match AntiInvolutiveCategory::validate(cat, d, eta) {
        Ok(a) => Ok((name, on, a)),
        Err(report) => err("E_LAW", block_pos, format!("involution `{name}` is invalid:\n{report}")),
    }
}

fn parse_positivity(
    p: &mut P,
    doc: &Document,
) -> Result<(String, String, PositivityNotion), ParseError> {
    p.keyword("positivity")?;
    let name = p.word()?;
    let on_pos = p.pos();
    p.keyword("on")?;
    let on = p.word()?;
    let inv = doc
        .involution(&on)
        .ok_or(ParseError { code: "E_REF", line: on_pos.0, col: on_pos.1, message: format!("unknown involution `{on}`") })?
        .clone();
    let block_pos = p.pos();
    p.expect(Tok::LBrace)?;
    let cat = inv.base();
    let mut sets: Vec<Vec<usize>> = vec![Vec::new(); cat.n_objects()];
    while let Some(Tok::Word(_)) = p.peek() {
        let epos = p.pos();
        let o = p.word()?;
        p.expect(Tok::Colon)?;
        p.expect(Tok::LBrace)?;
        let oi = cat.object_index(&o).ok_or(ParseError {
            code: "E_REF", line: epos.0, col: epos.1, message: format!("unknown object `{o}`"),
        })?;
        while let Some(Tok::Word(_)) = p.peek() {
            let m = p.word()?;
            let mi = cat.morphism_index(&m).ok_or(ParseError {
                code: "E_REF", line: epos.0, col: epos.1, message: format!("unknown morphism `{m}`"),
            })?;
            sets[oi].push(mi);
        }
        p.expect(Tok::RBrace)?;
        p.expect(Tok::Semi)?;
    }
    p.expect(Tok::RBrace)?;
    match crate::herm::validate_positivity(&inv, sets) {
        Ok(pos) => Ok((name, on, pos)),
        Err(report) => err("E_LAW", block_pos, format!("positivity `{name}` is invalid:\n{report}")),
    }
}

fn parse_functor(
    p: &mut P,
    doc: &Document,
) -> Result<(String, String, String, FunctorData), ParseError> {
    p.keyword("functor")?;
    let name = p.word()?;
    let from_pos = p.pos();
    p.keyword("from")?;
    let from = p.word()?;
    p.keyword("to")?;
    let to = p.word()?;
    let src = doc
        .category(&from)
        .ok_or(ParseError { code: "E_REF", line: from_pos.0, col: from_pos.1, message: format!("unknown category `{from}`") })?
        .clone();
    let tgt = doc
        .category(&to)
        .ok_or(ParseError { code: "E_REF", line: from_pos.0, col: from_pos.1, message: format!("unknown category `{to}`") })?
        .clone();
    let block_pos = p.pos();
    p.expect(Tok::LBrace)?;
    p.keyword("objects")?;
    p.expect(Tok::Colon)?;
    let mut object_map: Vec<Option<usize>> = vec![None; src.n_objects()];
    while matches!(p.peek(), Some(Tok::Word(w)) if w != "morphisms") {
        let epos = p.pos();
        let a = p.word()?;
        p.expect(Tok::FatArrow)?;
        let b = p.word()?;
        p.expect(Tok::Semi)?;
        let ai = src.object_index(&a).ok_or(ParseError {
            code: "E_REF", line: epos.0, col: epos.1, message: format!("unknown source object `{a}`"),
        })?;
        let bi = tgt.object_index(&b).ok_or(ParseError {
            code: "E_REF", line: epos.0, col: epos.1, message: format!("unknown target object `{b}`"),
        })?;
        object_map[ai] = Some(bi);
    }
    p.keyword("morphisms")?;
    p.expect(Tok::Colon)?;
    let mut morphism_map: Vec<Option<usize>> = vec![None; src.n_morphisms()];
    while let Some(Tok::Word(_)) = p.peek() {
        let epos = p.pos();
        let f = p.word()?;
        p.expect(Tok::FatArrow)?;
        let g = p.word()?;
        p.expect(Tok::Semi)?;
        let fi = src.morphism_index(&f).ok_or(ParseError {
            code: "E_REF", line: epos.0, col: epos.1, message: format!("unknown source morphism `{f}`"),
        })?;
        let gi = tgt.morphism_index(&g).ok_or(ParseError {
            code: "E_REF", line: epos.0, col: epos.1, message: format!("unknown target morphism `{g}`"),
        })?;
        morphism_map[fi] = Some(gi);
    }
    p.expect(Tok::RBrace)?;
    let complete = |v: Vec<Option<usize>>, what: &str| -> Result<Vec<usize>, ParseError> {
        v.into_iter()
            .map(|x| {
                x.ok_or(ParseError {
                    code: "E_LAW",
                    line: block_pos.0,
                    col: block_pos.1,
                    message: format!("functor `{name}` has an incomplete {what} map"),
                })
            })
            .collect()
    };
    let object_map = complete(object_map, "object")?;
    let morphism_map = complete(morphism_map, "morphism")?;
    match FunctorData::validate(src, tgt, object_map, morphism_map) {
        Ok(f) => Ok((name, from, to, f)),
        Err(report) => err("E_LAW", block_pos, format!("functor `{name}` is invalid:\n{report}")),
    }
}

// --------------------------------------------------------------- printer

/// Canonical form: every identity declared, full non-identity compose
/// table, entries in index order.
pub fn print(doc: &Document) -> String {
    let mut out = String::new();
    for (name, cat) in &doc.categories {
        print_category(&mut out, name, cat);
    }
    for (name, on, d) in &doc.daggers {
        out.push_str(&format!("dagger {name} on {on} {{\n"));
        for f in 0..d.base().n_morphisms() {
            out.push_str(&format!(
                "  {} -> {};\n",
                d.base().morphism(f).name,
                d.base().morphism(d.dag(f)).name
            ));
        }
        out.push_str("}\n");
    }
    for (name, on, a) in &doc.involutions {
        let b = a.base();
        out.push_str(&format!("involution {name} on {on} {{\n  d: "));
        let objs: Vec<String> = (0..b.n_objects())
            .map(|x| format!("{} => {}", b.object_name(x), b.object_name(a.d_obj(x))))
            .collect();
        out.push_str(&objs.join(", "));
        out.push_str(";\n     ");
        let mors: Vec<String> = (0..b.n_morphisms())
            .map(|f| format!("{} => {}", b.morphism(f).name, b.morphism(a.d_mor(f)).name))
            .collect();
        out.push_str(&mors.join(", "));
        out.push_str(";\n  eta: ");
        let etas: Vec<String> = (0..b.n_objects())
            .map(|x| format!("{} => {};", b.object_name(x), b.morphism(a.eta(x)).name))
            .collect();
        out.push_str(&etas.join(" "));
        out.push_str("\n}\n");
    }
    for (name, on, p) in &doc.positivities {
        let inv = doc.involution(on).expect("positivity references a printed involution");
        let b = inv.base();
        out.push_str(&format!("positivity {name} on {on} {{\n"));
        for (c, s) in p.sets.iter().enumerate() {
            let items: Vec<&str> = s.iter().map(|&h| b.morphism(h).name.as_str()).collect();
            out.push_str(&format!("  {}: {{ {} }};\n", b.object_name(c), items.join(" ")));
        }
        out.push_str("}\n");
    }
    for (name, from, to, f) in &doc.functors {
        out.push_str(&format!("functor {name} from {from} to {to} {{\n  objects:\n"));
        for (x, &y) in f.object_map.iter().enumerate() {
            out.push_str(&format!(
                "    {} => {};\n",
                f.source.object_name(x),
                f.target.object_name(y)
            ));
        }
        out.push_str("  morphisms:\n");
        for (g, &h) in f.morphism_map.iter().enumerate() {
            out.push_str(&format!(
                "    {} => {};\n",
                f.source.morphism(g).name,
                f.target.morphism(h).name
            ));
        }
        out.push_str("}\n");
    }
    out
}

fn print_category(out: &mut String, name: &str, cat: &FiniteCategory) {
    out.push_str(&format!("category {name} {{\n  objects:"));
    for x in 0..cat.n_objects() {
        out.push_str(&format!(" {}", cat.object_name(x)));
    }
    out.push_str(";\n  morphisms:\n");
    for f in 0..cat.n_morphisms() {
        let m = cat.morphism(f);
        out.push_str(&format!(
            "    {}: {} -> {};\n",
            m.name,
            cat.object_name(m.dom),
            cat.object_name(m.cod)
        ));
    }
    out.push_str("  identities:\n");
    for x in 0..cat.n_objects() {
        out.push_str(&format!(
            "    {} = {};\n",
            cat.object_name(x),
            cat.morphism(cat.identity(x)).name
        ));
    }
    let identity = |f: usize| cat.identities().contains(&f);
    let mut entries: Vec<String> = Vec::new();
    for g in 0..cat.n_morphisms() {
        for f in 0..cat.n_morphisms() {
            if identity(g) || identity(f) {
                continue;
            }
            if let Some(h) = cat.compose(g, f) {
                entries.push(format!(
                    "    {} . {} = {};\n",
                    cat.morphism(g).name,
                    cat.morphism(f).name,
                    cat.morphism(h).name
                ));
            }
        }
    }
    if !entries.is_empty() {
        out.push_str("  compose:\n");
        for e in entries {
            out.push_str(&e);
        }
    }
    out.push_str("}\n");
}

/// DSL-safe rename: non-identifier characters become `_`, with collisions
/// disambiguated by numeric suffixes. Used when exporting generated
/// structures whose names carry punctuation.
pub fn sanitize_names(cat: &FiniteCategory) -> FiniteCategory {
    let mut used: HashSet<String> = HashSet::new();
    let mut fix = |raw: &str| -> String {
        let mut s: String = raw
            .chars()
            .map(|c| if c.is_ascii_alphanumeric() || c == '_' { c } else { '_' })
            .collect();
        if s.is_empty() {
            s.push('x');
        }
        if matches!(s.as_str(), "objects" | "morphisms" | "identities" | "compose") {
            s.push('_');
        }
        let mut out = s.clone();
        let mut k = 2;
        while !used.insert(out.clone()) {
            out = format!("{s}_{k}");
            k += 1;
        }
        out
    };
    let objects: Vec<String> = (0..cat.n_objects()).map(|x| fix(cat.object_name(x))).collect();
    let mut used_m: HashSet<String> = HashSet::new();
    let mut fix_m = |raw: &str| -> String {
        let mut s: String = raw
            .chars()
            .map(|c| if c.is_ascii_alphanumeric() || c == '_' { c } else { '_' })
            .collect();
        if s.is_empty() {
            s.push('f');
        }
        if matches!(s.as_str(), "objects" | "morphisms" | "identities" | "compose") {
            s.push('_');
        }
        let mut out = s.clone();
        let mut k = 2;
        while !used_m.insert(out.clone()) {
            out = format!("{s}_{k}");
            k += 1;
        }
        out
    };
    let morphisms: Vec<Morphism> = cat
        .morphisms()
        .iter()
        .map(|m| Morphism::new(fix_m(&m.name), m.dom, m.cod))
        .collect();
    cat.renamed(objects, morphisms)
}
