//! A minimal DOT reader, enough to check the `excisive` output is a
//! well-formed acyclic digraph.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Ident(String),
    Quoted(String),
    Arrow,
    Punct(char),
}

fn tokenize(src: &str) -> Result<Vec<Token>, String> {
    let mut out = Vec::new();
    let mut chars = src.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            c if c.is_whitespace() => {
                chars.next();
            }
            '{' | '}' | '[' | ']' | ';' | '=' | ',' => {
                out.push(Token::Punct(c));
                chars.next();
            }
            '-' => {
                chars.next();
                match chars.next() {
                    Some('>') => out.push(Token::Arrow),
                    other => return Err(format!("expected '->', found '-{other:?}'")),
                }
            }
            '"' => {
                chars.next();
                let mut s = String::new();
                loop {
                    match chars.next() {
                        Some('"') => break,
                        Some('\\') => s.extend(chars.next()),
                        Some(ch) => s.push(ch),
                        None => return Err("unterminated string".into()),
                    }
                }
                out.push(Token::Quoted(s));
            }
            c if c.is_alphanumeric() || c == '_' => {
                let mut s = String::new();
                while let Some(&ch) = chars.peek() {
                    if ch.is_alphanumeric() || ch == '_' {
                        s.push(ch);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Token::Ident(s));
            }
            other => return Err(format!("unexpected character {other:?}")),
        }
    }
    Ok(out)
}

#[derive(Debug, Default)]
pub struct Digraph {
    pub name: String,
    pub attrs: BTreeMap<String, String>,
    /// Node id to label.
    pub nodes: BTreeMap<String, String>,
    pub edges: Vec<(String, String)>,
}

impl Digraph {
    pub fn is_acyclic(&self) -> bool {
        let mut indegree: BTreeMap<&str, usize> =
            self.nodes.keys().map(|k| (k.as_str(), 0)).collect();
        for (_, b) in &self.edges {
            *indegree.get_mut(b.as_str()).unwrap() += 1;
        }
        let mut ready: Vec<&str> = indegree
            .iter()
            .filter(|(_, &d)| d == 0)
            .map(|(&k, _)| k)
            .collect();
        let mut seen = 0;
        while let Some(n) = ready.pop() {
            seen += 1;
            for (a, b) in &self.edges {
                if a == n {
                    let d = indegree.get_mut(b.as_str()).unwrap();
                    *d -= 1;
                    if *d == 0 {
                        ready.push(b);
                    }
                }
            }
        }
        seen == self.nodes.len()
    }

    pub fn labels(&self) -> BTreeSet<&str> {
        self.nodes.values().map(String::as_str).collect()
    }
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn expect(&mut self, p: char) -> Result<(), String> {
        match self.next() {
            Some(Token::Punct(c)) if c == p => Ok(()),
            other => Err(format!("expected '{p}', found {other:?}")),
        }
    }

    fn id(&mut self) -> Result<String, String> {
        match self.next() {
            Some(Token::Ident(s)) | Some(Token::Quoted(s)) => Ok(s),
            other => Err(format!("expected identifier, found {other:?}")),
        }
    }

    fn attr_list(&mut self) -> Result<BTreeMap<String, String>, String> {
        let mut attrs = BTreeMap::new();
        self.expect('[')?;
        loop {
            if let Some(Token::Punct(']')) = self.peek() {
                self.next();
                return Ok(attrs);
            }
            let key = self.id()?;
            self.expect('=')?;
            let value = self.id()?;
            attrs.insert(key, value);
            if let Some(Token::Punct(',')) = self.peek() {
                self.next();
            }
        }
    }
}

pub fn parse_dot(src: &str) -> Result<Digraph, String> {
    let mut p = Parser {
        tokens: tokenize(src)?,
        pos: 0,
    };
    match p.next() {
        Some(Token::Ident(kw)) if kw == "digraph" => {}
        other => return Err(format!("expected 'digraph', found {other:?}")),
    }
    let mut g = Digraph {
        name: p.id()?,
        ..Digraph::default()
    };
    p.expect('{')?;
    loop {
        if let Some(Token::Punct('}')) = p.peek() {
            p.next();
            break;
        }
        let head = p.id()?;
        match p.peek() {
            Some(Token::Punct('=')) => {
                p.next();
                let value = p.id()?;
                g.attrs.insert(head, value);
            }
            Some(Token::Arrow) => {
                p.next();
                let tail = p.id()?;
                g.edges.push((head, tail));
            }
            Some(Token::Punct('[')) => {
                let attrs = p.attr_list()?;
                if head != "node" && head != "edge" && head != "graph" {
                    let label = attrs.get("label").cloned().unwrap_or_else(|| head.clone());
                    g.nodes.insert(head, label);
                }
            }
            other => return Err(format!("unexpected {other:?} after {head}")),
        }
        p.expect(';')?;
    }
    if p.peek().is_some() {
        return Err("trailing tokens after closing brace".into());
    }
    for (a, b) in &g.edges {
        for n in [a, b] {
            if !g.nodes.contains_key(n) {
                return Err(format!("edge endpoint {n} is not declared"));
            }
        }
    }
    Ok(g)
}

#[test]
fn tokenizer_rejects_garbage() {
    assert!(parse_dot("graph g { a -- b; }").is_err());
    assert!(parse_dot("digraph g { a -> b; }").is_err());
    let g =
        parse_dot("digraph g { rankdir=TB; a [label=\"A\"]; b [label=\"B\"]; a -> b; }").unwrap();
    assert!(g.is_acyclic());
    assert_eq!(g.edges.len(), 1);
}
