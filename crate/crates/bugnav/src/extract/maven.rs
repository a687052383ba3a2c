use std::collections::BTreeSet;

use bugnav_core::model::DependencyId;
use quick_xml::events::Event;
use quick_xml::Reader;

/// `(groupId, artifactId)` of every `<dependency>` in a POM, including
/// dependency management and plugin dependencies. `${project.groupId}` is
/// resolved against the POM's own (or parent) group.
pub fn parse_pom(xml: &str) -> Result<BTreeSet<DependencyId>, quick_xml::Error> {
    let mut reader = Reader::from_str(xml);
    reader.config_mut().trim_text(true);
    let mut path: Vec<String> = Vec::new();
    let mut own_group = None;
    let mut parent_group = None;
    let mut current: Option<(String, String)> = None;
    let mut raw = Vec::new();
    loop {
        match reader.read_event()? {
            Event::Start(e) => {
                let name = String::from_utf8_lossy(e.local_name().as_ref()).into_owned();
                if name == "dependency" {
                    current = Some((String::new(), String::new()));
                }
                path.push(name);
            }
            Event::End(_) => {
                if path.pop().as_deref() == Some("dependency") {
                    if let Some(dep) = current.take() {
                        raw.push(dep);
                    }
                }
            }
            Event::Text(t) => {
                let text = t.unescape()?.trim().to_string();
                let tail: Vec<&str> = path.iter().rev().take(2).map(String::as_str).collect();
                match (tail.as_slice(), current.as_mut()) {
                    (["groupId", "dependency"], Some(dep)) => dep.0 = text,
                    (["artifactId", "dependency"], Some(dep)) => dep.1 = text,
                    (["groupId", "project"], _) if path.len() == 2 => own_group = Some(text),
                    (["groupId", "parent"], _) if path.len() == 3 => parent_group = Some(text),
                    _ => {}
                }
            }
            Event::Eof => break,
            _ => {}
        }
    }
    let project_group = own_group.or(parent_group).unwrap_or_default();
    Ok(raw
        .into_iter()
        .filter_map(|(group, artifact)| {
            let group = match group.as_str() {
                "${project.groupId}" | "${pom.groupId}" | "${groupId}" => project_group.clone(),
                _ => group,
            };
            DependencyId::new(&group, &artifact)
        })
        .collect())
}
