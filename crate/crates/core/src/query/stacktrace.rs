//! Locating a Java stack trace in free-form issue text.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

/// What [`parse_stack_trace`] recovered from an issue body.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct StackTraceInfo {
    /// First exception or error named in the text, as written (usually fully qualified).
    pub top_exception: String,
    pub top_message: String,
    /// Exception of the last `Caused by:` block, or the top exception when there is none.
    pub root_exception: String,
    pub root_message: String,
    /// `at ...` frame lines following the top exception, trimmed.
    pub frames: Vec<String>,
    /// False when the text carries no frame lines.
    pub complete: bool,
}

impl StackTraceInfo {
    /// Unqualified root exception name, e.g. `UTFDataFormatException`.
    pub fn root_simple_name(&self) -> &str {
        simple_name(&self.root_exception)
    }
}

pub(crate) fn simple_name(qualified: &str) -> &str {
    qualified.rsplit('.').next().unwrap_or(qualified)
}

const SUFFIXES: [&str; 2] = ["Exception", "Error"];

fn is_word_byte(b: u8) -> bool {
    b.is_ascii_alphanumeric() || b == b'_' || b == b'$'
}

fn is_name_byte(b: u8) -> bool {
    b.is_ascii_alphabetic() || b == b'.'
}

/// A match of `[a-zA-Z.]*(Exception|Error)` standing as a whole word,
/// with a non-empty prefix. Returns (start, end) byte offsets, leading dots
/// excluded.
fn find_exception(text: &str, from: usize) -> Option<(usize, usize)> {
    let bytes = text.as_bytes();
    let mut pos = from;
    while pos < bytes.len() {
        let (idx, suffix) = SUFFIXES
            .iter()
            .filter_map(|s| text[pos..].find(s).map(|i| (pos + i, *s)))
            .min_by_key(|&(i, _)| i)?;
        let end = idx + suffix.len();
        pos = idx + 1;
        if end < bytes.len() && is_word_byte(bytes[end]) {
            continue;
        }
        let mut start = idx;
        while start > 0 && is_name_byte(bytes[start - 1]) {
            start -= 1;
        }
        if start > 0 && is_word_byte(bytes[start - 1]) {
            continue;
        }
        while start < idx && bytes[start] == b'.' {
            start += 1;
        }
        if start == idx || !bytes[start].is_ascii_alphabetic() {
            continue;
        }
        return Some((start, end));
    }
    None
}

/// The message following `Name:` up to the end of the line.
fn message_after(text: &str, end: usize) -> String {
    let rest = &text[end..];
    let line = rest.split('\n').next().unwrap_or("");
    match line.trim_start().strip_prefix(':') {
        Some(msg) => msg.trim().to_string(),
        None => String::new(),
    }
}

/// Finds the exception reported in `body` and its root cause.
///
/// The root cause is the exception of the last `Caused by:` block. When the
/// trace has no usable `Caused by:` block (users often paste partial traces),
/// the first exception of the text stands in for it.
pub fn parse_stack_trace(body: &str) -> Option<StackTraceInfo> {
    let (start, end) = find_exception(body, 0)?;
    let top_exception = body[start..end].to_string();
    let top_message = message_after(body, end);

    let mut root = None;
    if let Some(idx) = body.rfind("Caused by:") {
        let after = idx + "Caused by:".len();
        let lead = body[after..].len() - body[after..].trim_start().len();
        let name_start = after + lead;
        if let Some((s, e)) = find_exception(body, name_start) {
            if s == name_start {
                root = Some((body[s..e].to_string(), message_after(body, e)));
            }
        }
    }
    let (root_exception, root_message) = root.unwrap_or_else(|| (top_exception.clone(), top_message.clone()));

    let frames: Vec<String> = body[end..]
        .lines()
        .map(|l| l.trim().trim_start_matches('.').trim_start())
        .filter_map(|l| l.strip_prefix("at "))
        .filter(|f| f.contains('('))
        .map(|f| f.trim().to_string())
        .collect();
    let complete = !frames.is_empty();

    Some(StackTraceInfo { top_exception, top_message, root_exception, root_message, frames, complete })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn no_trace_in_feature_request() {
        assert_eq!(parse_stack_trace("please add dark mode"), None);
    }

    #[test]
    fn plural_and_bare_suffixes_are_not_exceptions() {
        assert_eq!(parse_stack_trace("I got several 500 Internal Server Errors"), None);
        assert_eq!(parse_stack_trace("Server Error on save"), None);
    }

    #[test]
    fn names_glued_to_digits_are_skipped() {
        assert_eq!(parse_stack_trace("an Http2Exception"), None);
    }

    #[test]
    fn caused_by_selects_the_last_block() {
        let body = "java.lang.RuntimeException: wrapper\n\tat a.B.c(B.java:1)\nCaused by: java.io.IOException: io\n\tat d.E.f(E.java:2)\nCaused by: java.net.SocketException: Connection reset\n\tat g.H.i(H.java:3)";
        let info = parse_stack_trace(body).unwrap();
        assert_eq!(info.top_exception, "java.lang.RuntimeException");
        assert_eq!(info.top_message, "wrapper");
        assert_eq!(info.root_exception, "java.net.SocketException");
        assert_eq!(info.root_message, "Connection reset");
        assert_eq!(info.frames.len(), 3);
        assert!(info.complete);
        assert_eq!(info.root_simple_name(), "SocketException");
    }

    #[test]
    fn without_caused_by_root_is_top() {
        let info = parse_stack_trace("Exception in thread main java.lang.IllegalStateException: boom").unwrap();
        assert_eq!(info.top_exception, "java.lang.IllegalStateException");
        assert_eq!(info.root_exception, info.top_exception);
        assert_eq!(info.root_message, "boom");
        assert!(!info.complete);
    }

    #[test]
    fn leading_ellipsis_is_not_part_of_the_name() {
        let info = parse_stack_trace("...AnalysisEngineProcessException: Annotator processing failed.").unwrap();
        assert_eq!(info.top_exception, "AnalysisEngineProcessException");
        assert_eq!(info.top_message, "Annotator processing failed.");
    }

    #[test]
    fn exception_without_message() {
        let info = parse_stack_trace("throws java.lang.NullPointerException\n  at x.Y.z(Y.java:3)").unwrap();
        assert_eq!(info.top_message, "");
        assert_eq!(info.frames, ["x.Y.z(Y.java:3)"]);
    }

    #[test]
    fn java_lang_error_subclass() {
        let info = parse_stack_trace("java.lang.OutOfMemoryError: Java heap space").unwrap();
        assert_eq!(info.root_exception, "java.lang.OutOfMemoryError");
        assert_eq!(info.root_message, "Java heap space");
    }
}
