//! Artifact sets from repository snapshots: dependencies, permissions, UI
//! elements and code token streams.

mod android;
mod gradle;
mod maven;

use std::collections::BTreeSet;

use bugnav_core::code::tokenize_code;
use bugnav_core::model::DependencyId;
use bugnav_core::similarity::is_source_path;
use bugnav_core::RepoContext;

pub use android::{parse_layout, parse_manifest_permissions};
pub use gradle::parse_gradle;
pub use maven::parse_pom;

use crate::corpus::RepoSnapshot;

fn file_name(path: &str) -> &str {
    path.rsplit('/').next().unwrap_or(path)
}

pub fn is_pom(path: &str) -> bool {
    file_name(path) == "pom.xml"
}

pub fn is_gradle_script(path: &str) -> bool {
    matches!(file_name(path), "build.gradle" | "build.gradle.kts")
}

pub fn is_manifest(path: &str) -> bool {
    file_name(path) == "AndroidManifest.xml"
}

/// XML under a `res/layout` (or qualified `res/layout-*`) directory.
pub fn is_layout(path: &str) -> bool {
    let parts: Vec<&str> = path.split('/').collect();
    path.ends_with(".xml")
        && parts.windows(2).any(|w| w[0] == "res" && (w[1] == "layout" || w[1].starts_with("layout-")))
}

fn warn_skip(path: &str, e: impl std::fmt::Display) {
    log::warn!("skipping malformed {path}: {e}");
}

pub fn extract_dependencies(snapshot: &RepoSnapshot) -> BTreeSet<DependencyId> {
    let mut out = BTreeSet::new();
    for (path, content) in &snapshot.files {
        if is_pom(path) {
            match parse_pom(content) {
                Ok(deps) => out.extend(deps),
                Err(e) => warn_skip(path, e),
            }
        } else if is_gradle_script(path) {
            out.extend(parse_gradle(content));
        }
    }
    out
}

pub fn extract_permissions(snapshot: &RepoSnapshot) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    for (path, content) in snapshot.files.iter().filter(|(p, _)| is_manifest(p)) {
        match parse_manifest_permissions(content) {
            Ok(p) => out.extend(p),
            Err(e) => warn_skip(path, e),
        }
    }
    out
}

pub fn extract_ui_elements(snapshot: &RepoSnapshot) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    for (path, content) in snapshot.files.iter().filter(|(p, _)| is_layout(p)) {
        match parse_layout(content) {
            Ok(p) => out.extend(p),
            Err(e) => warn_skip(path, e),
        }
    }
    out
}

pub fn build_repo_context(snapshot: &RepoSnapshot) -> RepoContext {
    RepoContext {
        dependencies: extract_dependencies(snapshot),
        permissions: extract_permissions(snapshot),
        ui_elements: extract_ui_elements(snapshot),
        code_files: snapshot
            .files
            .iter()
            .filter(|(p, _)| is_source_path(p))
            .map(|(p, c)| (p.clone(), tokenize_code(c)))
            .collect(),
        android: snapshot.files.keys().any(|p| is_manifest(p)),
    }
}
