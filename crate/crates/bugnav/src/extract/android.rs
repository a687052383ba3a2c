use std::collections::BTreeSet;

use quick_xml::events::{BytesStart, Event};
use quick_xml::Reader;

const PERMISSION_PREFIX: &str = "android.permission.";

/// Layout tags that structure a layout file rather than name a widget.
const NON_WIDGET_TAGS: &[&str] = &["data", "include", "layout", "merge", "requestfocus", "tag", "variable"];

fn attr(e: &BytesStart<'_>, name: &[u8]) -> Result<Option<String>, quick_xml::Error> {
    for a in e.attributes() {
        let a = a.map_err(quick_xml::Error::from)?;
        if a.key.as_ref() == name {
            return Ok(Some(a.unescape_value()?.into_owned()));
        }
    }
    Ok(None)
}

fn for_each_element<F>(xml: &str, mut f: F) -> Result<(), quick_xml::Error>
where
    F: FnMut(&BytesStart<'_>) -> Result<(), quick_xml::Error>,
{
    let mut reader = Reader::from_str(xml);
    loop {
        match reader.read_event()? {
            Event::Start(e) | Event::Empty(e) => f(&e)?,
            Event::Eof => return Ok(()),
            _ => {}
        }
    }
}

/// `uses-permission` names of a manifest, lowercased, with the
/// `android.permission.` prefix removed.
pub fn parse_manifest_permissions(xml: &str) -> Result<BTreeSet<String>, quick_xml::Error> {
    let mut out = BTreeSet::new();
    for_each_element(xml, |e| {
        let tag = e.name();
        if tag.as_ref().starts_with(b"uses-permission") {
            if let Some(name) = attr(e, b"android:name")? {
                let lower = name.trim().to_lowercase();
                let short = lower.strip_prefix(PERMISSION_PREFIX).unwrap_or(&lower);
                if !short.is_empty() {
                    out.insert(short.to_string());
                }
            }
        }
        Ok(())
    })?;
    Ok(out)
}

/// Widget tag names (last segment, lowercased) and `android:id` names of a
/// layout file.
pub fn parse_layout(xml: &str) -> Result<BTreeSet<String>, quick_xml::Error> {
    let mut out = BTreeSet::new();
    for_each_element(xml, |e| {
        let tag = String::from_utf8_lossy(e.name().as_ref()).to_lowercase();
        let widget = tag.rsplit('.').next().unwrap_or(&tag).to_string();
        if !NON_WIDGET_TAGS.contains(&widget.as_str()) {
            out.insert(widget);
        }
        if let Some(id) = attr(e, b"android:id")? {
            if let Some(leaf) = id.rsplit('/').next().filter(|_| id.starts_with('@')) {
                if !leaf.is_empty() {
                    out.insert(leaf.to_lowercase());
                }
            }
        }
        Ok(())
    })?;
    Ok(out)
}
