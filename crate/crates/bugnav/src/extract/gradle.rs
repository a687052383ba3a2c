use std::collections::BTreeSet;
use std::sync::LazyLock;

use bugnav_core::model::DependencyId;
use regex::Regex;

/// A configuration call such as `implementation`, `api` or `classpath`
/// opening a line.
static CONFIGURATION: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"^\s*[A-Za-z_]\w*\s*[\(\s]").unwrap());
/// `"group:artifact"` or `'group:artifact:version[:classifier][@ext]'`.
static STRING_NOTATION: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r#"["']([A-Za-z0-9_.\-]+):([A-Za-z0-9_.\-]+)(?::[^"'\s]*)?["']"#).unwrap());
/// `group: 'g', name: 'a'` (Groovy) or `group = "g", name = "a"` (Kotlin).
static MAP_NOTATION: LazyLock<Regex> = LazyLock::new(|| {
    Regex::new(r#"group\s*[:=]\s*["']([^"']+)["']\s*,\s*name\s*[:=]\s*["']([^"']+)["']"#).unwrap()
});

/// Dependency coordinates declared in a Groovy or Kotlin build script. Line
/// based: only notations written on a single line are found.
pub fn parse_gradle(script: &str) -> BTreeSet<DependencyId> {
    let mut out = BTreeSet::new();
    for line in script.lines() {
        let line = line.split("//").next().unwrap_or("");
        if !CONFIGURATION.is_match(line) {
            continue;
        }
        for c in MAP_NOTATION.captures_iter(line) {
            out.extend(DependencyId::new(&c[1], &c[2]));
        }
        for c in STRING_NOTATION.captures_iter(line) {
            out.extend(DependencyId::new(&c[1], &c[2]));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ids(script: &str) -> Vec<String> {
        parse_gradle(script).iter().map(DependencyId::canonical).collect()
    }

    #[test]
    fn material_dependency() {
        assert_eq!(ids("    implementation 'com.google.android.material:material:1.1.0'"), ["com.google.android.material:material"]);
    }

    #[test]
    fn notations() {
        let script = r#"
buildscript {
    dependencies { classpath "com.android.tools.build:gradle:3.5.0" }
}
plugins { id 'com.android.application' }
repositories { maven { url 'https://jitpack.io' } }
dependencies {
    implementation project(':core')
    api group: 'org.tartarus', name: 'snowball', version: '1.0'
    testImplementation("junit:junit:4.12")
    implementation(platform("com.squareup.okhttp3:okhttp-bom:4.9.0"))
    // implementation 'commented:out:1.0'
    compile 'com.google.guava:guava:28.0-android@jar'
}
"#;
        assert_eq!(
            ids(script),
            [
                "com.android.tools.build:gradle",
                "com.google.guava:guava",
                "com.squareup.okhttp3:okhttp-bom",
                "junit:junit",
                "org.tartarus:snowball"
            ]
        );
    }

    #[test]
    fn no_dependencies() {
        assert!(parse_gradle("apply plugin: 'java'").is_empty());
    }
}
