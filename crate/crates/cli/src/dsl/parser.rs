//! Recursive-descent parser producing a position-annotated syntax tree.

use super::lexer::{tokenize, Tok, Token};
use super::{DslError, Pos};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Name {
    pub text: String,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PathAst {
    /// `id(x)`
    Identity(Name),
    /// `f g h`, in diagrammatic order
    Edges(Vec<Name>),
}

impl PathAst {
    pub fn pos(&self) -> Pos {
        match self {
            PathAst::Identity(n) => n.pos,
            PathAst::Edges(es) => es[0].pos,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TermAst {
    Gen(Name),
    Id(PathAst, Pos),
    V(Box<TermAst>, Box<TermAst>, Pos),
    H(Box<TermAst>, Box<TermAst>, Pos),
}

impl TermAst {
    pub fn pos(&self) -> Pos {
        match self {
            TermAst::Gen(n) => n.pos,
            TermAst::Id(_, p) | TermAst::V(_, _, p) | TermAst::H(_, _, p) => *p,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ItemAst {
    Computad2 {
        name: Name,
        objects: Vec<Name>,
        edges: Vec<(Name, Name, Name)>,
        gens2: Vec<(Name, PathAst, PathAst)>,
    },
    Com3 {
        name: Name,
        over: Name,
        gens3: Vec<(Name, TermAst, TermAst)>,
    },
    Morphism {
        name: Name,
        source: Name,
        target: Name,
        vertices: Vec<(Name, Name)>,
        edges: Vec<(Name, Name)>,
        gens2: Vec<(Name, Name)>,
    },
}

impl ItemAst {
    pub fn name(&self) -> &Name {
        match self {
            ItemAst::Computad2 { name, .. }
            | ItemAst::Com3 { name, .. }
            | ItemAst::Morphism { name, .. } => name,
        }
    }
}

pub fn parse_items(src: &str) -> Result<Vec<ItemAst>, DslError> {
    let mut p = Parser {
        toks: tokenize(src)?,
        at: 0,
    };
    let mut items = Vec::new();
    while p.peek() != &Tok::Eof {
        items.push(p.item()?);
    }
    Ok(items)
}

/// Parses a single cell term, e.g. from the command line.
pub fn parse_term(src: &str) -> Result<TermAst, DslError> {
    let mut p = Parser {
        toks: tokenize(src)?,
        at: 0,
    };
    let t = p.term()?;
    p.expect(Tok::Eof)?;
    Ok(t)
}

struct Parser {
    toks: Vec<Token>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].tok
    }

    fn peek_at(&self, offset: usize) -> &Tok {
        let i = (self.at + offset).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].pos
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn unexpected(&self, wanted: &str) -> DslError {
        DslError::syntax(
            self.pos(),
            format!("expected {wanted}, found {}", self.peek()),
        )
    }

    fn expect(&mut self, tok: Tok) -> Result<Pos, DslError> {
        if *self.peek() == tok {
            Ok(self.bump().pos)
        } else {
            Err(self.unexpected(&tok.to_string()))
        }
    }

    fn name(&mut self) -> Result<Name, DslError> {
        match self.peek().clone() {
            Tok::Ident(text) => {
                let pos = self.bump().pos;
                Ok(Name { text, pos })
            }
            _ => Err(self.unexpected("a name")),
        }
    }

    fn keyword(&mut self, word: &str) -> Result<Pos, DslError> {
        match self.peek() {
            Tok::Ident(s) if s == word => Ok(self.bump().pos),
            _ => Err(self.unexpected(&format!("`{word}`"))),
        }
    }

    fn is_call(&self, word: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == word) && *self.peek_at(1) == Tok::LParen
    }

    fn item(&mut self) -> Result<ItemAst, DslError> {
        let head = self.name()?;
        match head.text.as_str() {
            "computad2" => self.computad2(),
            "com3" => self.com3(),
            "morphism" => self.morphism(),
            other => Err(DslError::syntax(
                head.pos,
                format!("expected `computad2`, `com3` or `morphism`, found `{other}`"),
            )),
        }
    }

    /// Runs `body` once per `section: ... ;` inside braces.
    fn sections(
        &mut self,
        allowed: &[&str],
        mut body: impl FnMut(&mut Self, &str) -> Result<(), DslError>,
    ) -> Result<(), DslError> {
        self.expect(Tok::LBrace)?;
        let mut seen: Vec<String> = Vec::new();
        while *self.peek() != Tok::RBrace {
            let section = self.name()?;
            if !allowed.contains(&section.text.as_str()) {
                return Err(DslError::syntax(
                    section.pos,
                    format!(
                        "unknown section `{}`, expected one of: {}",
                        section.text,
                        allowed.join(", ")
                    ),
                ));
            }
            if seen.contains(&section.text) {
                return Err(DslError::syntax(
                    section.pos,
                    format!("section `{}` appears twice", section.text),
                ));
            }
            seen.push(section.text.clone());
            self.expect(Tok::Colon)?;
            if *self.peek() != Tok::Semi {
                loop {
                    body(self, &section.text)?;
                    if *self.peek() == Tok::Comma {
                        self.bump();
                    } else {
                        break;
                    }
                }
            }
            self.expect(Tok::Semi)?;
        }
        self.expect(Tok::RBrace)?;
        Ok(())
    }

    fn computad2(&mut self) -> Result<ItemAst, DslError> {
        let name = self.name()?;
        let mut objects = Vec::new();
        let mut edges = Vec::new();
        let mut gens2 = Vec::new();
        self.sections(&["objects", "edges", "gens2"], |p, section| {
            match section {
                "objects" => objects.push(p.name()?),
                "edges" => {
                    let e = p.name()?;
                    p.expect(Tok::Colon)?;
                    let s = p.name()?;
                    p.expect(Tok::Arrow)?;
                    let t = p.name()?;
                    edges.push((e, s, t));
                }
                _ => {
                    let g = p.name()?;
                    p.expect(Tok::Colon)?;
                    let s = p.path()?;
                    p.expect(Tok::DoubleArrow)?;
                    let t = p.path()?;
                    gens2.push((g, s, t));
                }
            }
            Ok(())
        })?;
        Ok(ItemAst::Computad2 {
            name,
            objects,
            edges,
            gens2,
        })
    }

    fn com3(&mut self) -> Result<ItemAst, DslError> {
        let name = self.name()?;
        self.keyword("over")?;
        let over = self.name()?;
        let mut gens3 = Vec::new();
        self.sections(&["gens3"], |p, _| {
            let g = p.name()?;
            p.expect(Tok::Colon)?;
            let s = p.term()?;
            p.expect(Tok::DoubleArrow)?;
            let t = p.term()?;
            gens3.push((g, s, t));
            Ok(())
        })?;
        Ok(ItemAst::Com3 { name, over, gens3 })
    }

    fn morphism(&mut self) -> Result<ItemAst, DslError> {
        let name = self.name()?;
        self.expect(Tok::Colon)?;
        let source = self.name()?;
        self.expect(Tok::Arrow)?;
        let target = self.name()?;
        let mut vertices = Vec::new();
        let mut edges = Vec::new();
        let mut gens2 = Vec::new();
        self.sections(&["vertices", "edges", "gens2"], |p, section| {
            let from = p.name()?;
            p.expect(Tok::Arrow)?;
            let to = p.name()?;
            match section {
                "vertices" => vertices.push((from, to)),
                "edges" => edges.push((from, to)),
                _ => gens2.push((from, to)),
            }
            Ok(())
        })?;
        Ok(ItemAst::Morphism {
            name,
            source,
            target,
            vertices,
            edges,
            gens2,
        })
    }

    fn path(&mut self) -> Result<PathAst, DslError> {
        if self.is_call("id") {
            self.bump();
            self.expect(Tok::LParen)?;
            let v = self.name()?;
            self.expect(Tok::RParen)?;
            return Ok(PathAst::Identity(v));
        }
        let mut edges = vec![self.name()?];
        while matches!(self.peek(), Tok::Ident(_)) {
            edges.push(self.name()?);
        }
        Ok(PathAst::Edges(edges))
    }

    fn term(&mut self) -> Result<TermAst, DslError> {
        let pos = self.pos();
        if self.is_call("id") {
            self.bump();
            self.expect(Tok::LParen)?;
            let path = self.path()?;
            self.expect(Tok::RParen)?;
            return Ok(TermAst::Id(path, pos));
        }
        for (word, vertical) in [("v", true), ("h", false)] {
            if self.is_call(word) {
                self.bump();
                self.expect(Tok::LParen)?;
                let a = Box::new(self.term()?);
                self.expect(Tok::Comma)?;
                let b = Box::new(self.term()?);
                self.expect(Tok::RParen)?;
                return Ok(if vertical {
                    TermAst::V(a, b, pos)
                } else {
                    TermAst::H(a, b, pos)
                });
            }
        }
        Ok(TermAst::Gen(self.name()?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn computad_item() {
        let items = parse_items(
            "computad2 K { objects: x, y; edges: f: x -> y; gens2: s: f => f, t: id(x) => id(x); }",
        )
        .unwrap();
        let ItemAst::Computad2 {
            objects,
            edges,
            gens2,
            ..
        } = &items[0]
        else {
            panic!("not a computad");
        };
        assert_eq!(objects.len(), 2);
        assert_eq!(edges.len(), 1);
        assert_eq!(gens2.len(), 2);
        assert!(matches!(gens2[1].1, PathAst::Identity(_)));
    }

    #[test]
    fn empty_sections_and_documents() {
        assert!(parse_items("").unwrap().is_empty());
        assert!(parse_items("# only a comment\n").unwrap().is_empty());
        let items =
            parse_items("morphism f: A -> B { vertices: x -> x; edges: ; gens2: ; }").unwrap();
        assert_eq!(items.len(), 1);
    }

    #[test]
    fn terms() {
        let t = parse_term("v(a1, h(id(id(x)), a2))").unwrap();
        let TermAst::V(a, b, _) = t else {
            panic!("not vertical")
        };
        assert!(matches!(*a, TermAst::Gen(_)));
        assert!(matches!(*b, TermAst::H(..)));
        // a generator may be called v when it is not applied
        assert!(matches!(parse_term("v").unwrap(), TermAst::Gen(_)));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = parse_items("computad2 A {\n  objects x;\n}").unwrap_err();
        assert_eq!(err.pos(), Some(Pos { line: 2, col: 11 }));
        let err = parse_items("computad2 A { colours: ; }").unwrap_err();
        assert!(err.to_string().contains("unknown section"));
        let err = parse_items("computad2 A { objects: ; objects: ; }").unwrap_err();
        assert!(err.to_string().contains("twice"));
    }
}
