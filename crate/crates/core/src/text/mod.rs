//! Text normalization used by query generation and mention matching.

mod porter;
mod stopwords;

use alloc::string::String;
use alloc::vec::Vec;

pub use porter::stem;
pub use stopwords::{is_stopword, STOPWORDS};

/// How [`tokenize`] treats `.` and `_`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TokenizeMode {
    /// Every non-alphanumeric character separates tokens.
    #[default]
    Split,
    /// `.` and `_` between two alphanumerics stay inside the token, so
    /// `tweets_clean.txt` and `java.lang.Object` survive as single units.
    KeepIdentifiers,
}

/// Ordered, lowercase tokens. Never contains empty or whitespace-bearing tokens.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TokenStream {
    tokens: Vec<String>,
}

impl TokenStream {
    /// Drops empty tokens and splits any that contain whitespace.
    pub fn from_tokens<I, S>(tokens: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let tokens = tokens
            .into_iter()
            .flat_map(|t| t.as_ref().split_whitespace().map(str::to_lowercase).collect::<Vec<_>>())
            .collect();
        Self { tokens }
    }

    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    pub fn into_tokens(self) -> Vec<String> {
        self.tokens
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Tokens joined by single spaces.
    pub fn join(&self) -> String {
        self.tokens.join(" ")
    }
}

/// Splits `text` into lowercase tokens using [`TokenizeMode::Split`].
pub fn tokenize(text: &str) -> TokenStream {
    tokenize_with(text, TokenizeMode::Split)
}

pub fn tokenize_with(text: &str, mode: TokenizeMode) -> TokenStream {
    TokenStream { tokens: words(text, mode).into_iter().map(str::to_lowercase).collect() }
}

/// The surface (case-preserving) words of `text`.
pub fn words(text: &str, mode: TokenizeMode) -> Vec<&str> {
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    let mut iter = text.char_indices().peekable();
    let mut prev_alnum = false;
    while let Some((i, c)) = iter.next() {
        let joins = mode == TokenizeMode::KeepIdentifiers
            && (c == '.' || c == '_')
            && prev_alnum
            && iter.peek().is_some_and(|&(_, n)| n.is_alphanumeric());
        if c.is_alphanumeric() || joins {
            if start.is_none() {
                start = Some(i);
            }
            prev_alnum = c.is_alphanumeric();
        } else {
            if let Some(s) = start.take() {
                out.push(&text[s..i]);
            }
            prev_alnum = false;
        }
    }
    if let Some(s) = start {
        out.push(&text[s..]);
    }
    out
}

/// Removes stopwords, keeping the remaining tokens in order.
pub fn remove_stopwords(ts: &TokenStream) -> TokenStream {
    TokenStream { tokens: ts.tokens.iter().filter(|t| !is_stopword(t)).cloned().collect() }
}

/// Splits a camel-case identifier into its parts: `SnowballStemmer` becomes
/// `Snowball`, `Stemmer`; `parseHTTPResponse` becomes `parse`, `HTTP`, `Response`.
pub fn split_camel(word: &str) -> Vec<&str> {
    let chars: Vec<(usize, char)> = word.char_indices().collect();
    let mut parts = Vec::new();
    let mut start = 0;
    for k in 1..chars.len() {
        let (i, c) = chars[k];
        let prev = chars[k - 1].1;
        let next = chars.get(k + 1).map(|&(_, n)| n);
        let boundary = (c.is_uppercase() && (prev.is_lowercase() || prev.is_numeric()))
            || (c.is_uppercase() && prev.is_uppercase() && next.is_some_and(char::is_lowercase));
        if boundary {
            parts.push(&word[start..i]);
            start = i;
        }
    }
    if start < word.len() {
        parts.push(&word[start..]);
    }
    parts
}
