//! Error-tolerant lexer for Java-family source text.
//!
//! The token stream keeps keywords, operators and punctuation as distinct
//! kinds, collapses every identifier into [`TokenKind::Ident`] (keeping its
//! text alongside), and drops comments and the contents of string and
//! character literals.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TokenKind {
    Keyword(&'static str),
    Ident,
    Number,
    Str,
    Char,
    Op(&'static str),
}

impl TokenKind {
    /// Stable name such as `kw_int`, `ident`, `num` or `semi`.
    pub fn name(&self) -> String {
        match self {
            TokenKind::Keyword(k) => alloc::format!("kw_{k}"),
            TokenKind::Ident => "ident".into(),
            TokenKind::Number => "num".into(),
            TokenKind::Str => "str".into(),
            TokenKind::Char => "char".into(),
            TokenKind::Op(name) => (*name).into(),
        }
    }
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CodeToken {
    pub kind: TokenKind,
    /// Identifier text; `None` for every other kind.
    pub text: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CodeTokenStream {
    pub tokens: Vec<CodeToken>,
}

impl CodeTokenStream {
    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Token kinds with identifiers abstracted away.
    pub fn kinds(&self) -> Vec<TokenKind> {
        self.tokens.iter().map(|t| t.kind).collect()
    }

    pub fn kind_names(&self) -> Vec<String> {
        self.tokens.iter().map(|t| t.kind.name()).collect()
    }
}

const KEYWORDS: &[&str] = &[
    "abstract", "assert", "boolean", "break", "byte", "case", "catch", "char", "class", "const", "continue",
    "default", "do", "double", "else", "enum", "extends", "false", "final", "finally", "float", "for", "goto",
    "if", "implements", "import", "instanceof", "int", "interface", "long", "native", "new", "null", "package",
    "private", "protected", "public", "return", "short", "static", "strictfp", "super", "switch", "synchronized",
    "this", "throw", "throws", "transient", "true", "try", "var", "void", "volatile", "while",
];

/// Longest operators first so that greedy matching picks `>>>=` over `>`.
const OPERATORS: &[(&str, &str)] = &[
    (">>>=", "urshift_assign"),
    ("<<=", "lshift_assign"),
    (">>=", "rshift_assign"),
    (">>>", "urshift"),
    ("...", "ellipsis"),
    ("->", "arrow"),
    ("::", "coloncolon"),
    ("++", "inc"),
    ("--", "dec"),
    ("&&", "andand"),
    ("||", "oror"),
    ("==", "eqeq"),
    ("!=", "ne"),
    ("<=", "le"),
    (">=", "ge"),
    ("+=", "plus_assign"),
    ("-=", "minus_assign"),
    ("*=", "star_assign"),
    ("/=", "slash_assign"),
    ("%=", "percent_assign"),
    ("&=", "and_assign"),
    ("|=", "or_assign"),
    ("^=", "xor_assign"),
    ("<<", "lshift"),
    (">>", "rshift"),
    ("=", "eq"),
    ("<", "lt"),
    (">", "gt"),
    ("!", "bang"),
    ("~", "tilde"),
    ("?", "question"),
    (":", "colon"),
    ("+", "plus"),
    ("-", "minus"),
    ("*", "star"),
    ("/", "slash"),
    ("%", "percent"),
    ("&", "amp"),
    ("|", "pipe"),
    ("^", "caret"),
    ("(", "lparen"),
    (")", "rparen"),
    ("{", "lbrace"),
    ("}", "rbrace"),
    ("[", "lbracket"),
    ("]", "rbracket"),
    (";", "semi"),
    (",", "comma"),
    (".", "dot"),
    ("@", "at"),
];

fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_' || c == '$'
}

fn is_ident_part(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '$'
}

/// Lexes `source`. Unknown characters are skipped; unterminated comments and
/// literals run to the end of input.
pub fn tokenize_code(source: &str) -> CodeTokenStream {
    let mut tokens = Vec::new();
    let mut rest = source;
    while let Some(c) = rest.chars().next() {
        if c.is_whitespace() {
            rest = &rest[c.len_utf8()..];
        } else if rest.starts_with("//") {
            rest = rest.find('\n').map_or("", |i| &rest[i..]);
        } else if rest.starts_with("/*") {
            rest = rest[2..].find("*/").map_or("", |i| &rest[i + 4..]);
        } else if rest.starts_with("\"\"\"") {
            rest = rest[3..].find("\"\"\"").map_or("", |i| &rest[i + 6..]);
            tokens.push(CodeToken { kind: TokenKind::Str, text: None });
        } else if c == '"' || c == '\'' {
            rest = skip_quoted(&rest[1..], c);
            let kind = if c == '"' { TokenKind::Str } else { TokenKind::Char };
            tokens.push(CodeToken { kind, text: None });
        } else if c.is_ascii_digit() || (c == '.' && rest[1..].starts_with(|n: char| n.is_ascii_digit())) {
            rest = skip_number(rest);
            tokens.push(CodeToken { kind: TokenKind::Number, text: None });
        } else if is_ident_start(c) {
            let end = rest.find(|ch: char| !is_ident_part(ch)).unwrap_or(rest.len());
            let word = &rest[..end];
            let token = match KEYWORDS.binary_search(&word) {
                Ok(i) => CodeToken { kind: TokenKind::Keyword(KEYWORDS[i]), text: None },
                Err(_) => CodeToken { kind: TokenKind::Ident, text: Some(word.into()) },
            };
            tokens.push(token);
            rest = &rest[end..];
        } else if let Some(&(sym, name)) = OPERATORS.iter().find(|(sym, _)| rest.starts_with(sym)) {
            tokens.push(CodeToken { kind: TokenKind::Op(name), text: None });
            rest = &rest[sym.len()..];
        } else {
            rest = &rest[c.len_utf8()..];
        }
    }
    CodeTokenStream { tokens }
}

fn skip_quoted(rest: &str, quote: char) -> &str {
    let mut escaped = false;
    for (i, c) in rest.char_indices() {
        if escaped {
            escaped = false;
        } else if c == '\\' {
            escaped = true;
        } else if c == quote {
            return &rest[i + 1..];
        } else if c == '\n' {
            // Unterminated on this line: resume lexing at the newline.
            return &rest[i..];
        }
    }
    ""
}

fn skip_number(rest: &str) -> &str {
    let mut prev = '\0';
    for (i, c) in rest.char_indices() {
        let exponent_sign = (c == '+' || c == '-') && matches!(prev, 'e' | 'E' | 'p' | 'P') && !rest.starts_with("0x");
        if !(c.is_ascii_alphanumeric() || c == '_' || c == '.' || exponent_sign) {
            return &rest[i..];
        }
        prev = c;
    }
    ""
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn keyword_list_is_sorted() {
        assert!(KEYWORDS.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn declaration_with_line_comment() {
        let ts = tokenize_code("int x = 0; // hi");
        assert_eq!(ts.kind_names(), vec!["kw_int", "ident", "eq", "num", "semi"]);
        assert_eq!(ts.tokens[1].text.as_deref(), Some("x"));
    }

    #[test]
    fn empty_source() {
        assert!(tokenize_code("").is_empty());
        assert!(tokenize_code("  /* only a comment */ ").is_empty());
    }

    #[test]
    fn literal_contents_are_dropped() {
        let ts = tokenize_code(r#"s = "a // not a comment \" still"; c = '\''; t = """x "y" z""";"#);
        assert_eq!(
            ts.kind_names(),
            vec!["ident", "eq", "str", "semi", "ident", "eq", "char", "semi", "ident", "eq", "str", "semi"]
        );
    }

    #[test]
    fn renamed_identifiers_share_kinds() {
        let a = tokenize_code("for (String v : values) { out.writeUTF(v); }");
        let b = tokenize_code("for (String evalue : parts) { raf.writeUTF(evalue); }");
        assert_eq!(a.kinds(), b.kinds());
        assert_ne!(a, b);
    }

    #[test]
    fn operators_and_numbers() {
        let ts = tokenize_code("x >>>= 0x1F; y = 1.5e-3f; z -> z::m; @Override");
        assert_eq!(
            ts.kind_names(),
            vec![
                "ident", "urshift_assign", "num", "semi", "ident", "eq", "num", "semi", "ident", "arrow", "ident",
                "coloncolon", "ident", "semi", "at", "ident"
            ]
        );
    }

    #[test]
    fn unknown_characters_and_unterminated_input() {
        let ts = tokenize_code("a # b /* open");
        assert_eq!(ts.kind_names(), vec!["ident", "ident"]);
        let ts = tokenize_code("s = \"open\nx;");
        assert_eq!(ts.kind_names(), vec!["ident", "eq", "str", "ident", "semi"]);
    }
}
