//! Regenerates the replay fixtures under `tests/fixtures` by running the
//! pipeline against an in-memory API and recording every response.
//!
//! cargo run -p bugnav --example make_fixtures -- crates/bugnav/tests/fixtures

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use base64::Engine;
use bugnav::config::RunConfig;
use bugnav::corpus::{mine_similar_pairs, ApiRequest, ApiResponse, GitHubClient, RecordingTransport, Transport};
use bugnav::dataset::to_jsonl;
use bugnav::pipeline::{recommend, DriverSource};
use bugnav::CorpusError;
use bugnav_core::{IssueDocument, IssueRef};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

const API: &str = "https://api.github.com";

fn sha(text: &str) -> String {
    hex::encode(&Sha256::digest(text.as_bytes())[..20])
}

fn b64(text: &str) -> String {
    base64::engine::general_purpose::STANDARD.encode(text)
}

#[derive(Default)]
struct SimApi {
    routes: BTreeMap<String, Value>,
    searches: BTreeMap<String, Vec<Value>>,
}

struct Issue<'a> {
    repo: &'a str,
    number: u64,
    title: &'a str,
    body: &'a str,
    open: bool,
    comments: &'a [&'a str],
    pull: bool,
}

impl<'a> Issue<'a> {
    fn new(repo: &'a str, number: u64, title: &'a str, body: &'a str) -> Self {
        Self { repo, number, title, body, open: false, comments: &[], pull: false }
    }

    fn comments(mut self, c: &'a [&'a str]) -> Self {
        self.comments = c;
        self
    }

    fn pull(mut self) -> Self {
        self.pull = true;
        self
    }

    fn open(mut self) -> Self {
        self.open = true;
        self
    }
}

impl SimApi {
    fn repo(&mut self, full: &str, language: &str, files: &[(&str, &str)]) {
        let head = sha(&format!("{full}-head"));
        self.routes.insert(format!("/repos/{full}"), json!({ "full_name": full, "default_branch": "main", "language": language }));
        self.routes.insert(format!("/repos/{full}/branches/main"), json!({ "name": "main", "commit": { "sha": head } }));
        let mut tree = Vec::new();
        for (path, content) in files {
            let blob = sha(content);
            tree.push(json!({ "path": path, "type": "blob", "sha": blob }));
            self.routes.insert(format!("/repos/{full}/git/blobs/{blob}"), json!({ "sha": blob, "content": b64(content), "encoding": "base64" }));
        }
        self.routes.insert(format!("/repos/{full}/git/trees/{head}"), json!({ "sha": head, "tree": tree, "truncated": false }));
    }

    fn issue(&mut self, i: Issue<'_>) -> Value {
        let mut v = json!({
            "number": i.number,
            "title": i.title,
            "body": i.body,
            "state": if i.open { "open" } else { "closed" },
            "comments": i.comments.len(),
            "labels": [],
            "repository_url": format!("{API}/repos/{}", i.repo),
            "html_url": format!("https://github.com/{}/issues/{}", i.repo, i.number),
        });
        if i.pull {
            v["pull_request"] = json!({ "url": format!("{API}/repos/{}/pulls/{}", i.repo, i.number) });
        }
        let base = format!("/repos/{}/issues/{}", i.repo, i.number);
        self.routes.insert(base.clone(), v.clone());
        let comments: Vec<Value> = i.comments.iter().map(|c| json!({ "body": c })).collect();
        self.routes.insert(format!("{base}/comments"), Value::Array(comments));
        v
    }

    fn files_json(&mut self, repo: &str, files: &[(&str, &str)]) -> Value {
        let mut out = Vec::new();
        for (path, content) in files {
            let r = sha(&format!("{repo}{path}{content}"));
            out.push(json!({
                "filename": path,
                "status": "modified",
                "patch": format!("@@ -1,3 +1,3 @@\n+{}", content.lines().next().unwrap_or("")),
                "contents_url": format!("{API}/repos/{repo}/contents/{path}?ref={r}"),
            }));
            self.routes.insert(format!("/repos/{repo}/contents/{path}"), json!({ "content": b64(content), "encoding": "base64" }));
        }
        Value::Array(out)
    }

    fn pull_files(&mut self, repo: &str, number: u64, files: &[(&str, &str)]) {
        let v = self.files_json(repo, files);
        self.routes.insert(format!("/repos/{repo}/pulls/{number}/files"), v);
    }

    fn commit(&mut self, repo: &str, sha: &str, files: &[(&str, &str)]) {
        let v = self.files_json(repo, files);
        self.routes.insert(format!("/repos/{repo}/commits/{sha}"), json!({ "sha": sha, "files": v }));
    }

    fn search(&mut self, q: &str, items: Vec<Value>) {
        self.searches.insert(q.to_string(), items);
    }
}

fn param<'r>(req: &'r ApiRequest, key: &str) -> Option<&'r str> {
    req.query.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
}

impl Transport for SimApi {
    fn get(&self, req: &ApiRequest) -> Result<ApiResponse, CorpusError> {
        let page: usize = param(req, "page").and_then(|p| p.parse().ok()).unwrap_or(1);
        let per_page: usize = param(req, "per_page").and_then(|p| p.parse().ok()).unwrap_or(30);
        let body = if req.path == "/search/issues" {
            let items = self.searches.get(param(req, "q").unwrap_or("")).cloned().unwrap_or_default();
            let slice: Vec<Value> = items.iter().skip((page - 1) * per_page).take(per_page).cloned().collect();
            json!({ "total_count": items.len(), "incomplete_results": false, "items": slice })
        } else {
            match self.routes.get(&req.path) {
                Some(Value::Array(list)) => {
                    Value::Array(list.iter().skip((page - 1) * per_page).take(per_page).cloned().collect())
                }
                Some(v) => v.clone(),
                None => {
                    let body = serde_json::to_vec_pretty(&json!({ "message": "Not Found" })).unwrap();
                    return Ok(ApiResponse { status: 404, headers: BTreeMap::new(), body });
                }
            }
        };
        Ok(ApiResponse::ok(serde_json::to_vec_pretty(&body).unwrap()))
    }

    fn is_replay(&self) -> bool {
        true
    }
}

fn reset(dir: &Path) -> PathBuf {
    if dir.exists() {
        fs::remove_dir_all(dir).unwrap();
    }
    fs::create_dir_all(dir).unwrap();
    dir.to_path_buf()
}

fn client(api: SimApi, dir: &Path) -> GitHubClient<RecordingTransport<SimApi>> {
    GitHubClient::new(RecordingTransport::new(api, reset(dir)))
}

const CONFIG_BODY: &str = "The exact message is :

```
java.io.UTFDataFormatException: encoded string too long: 93067 bytes
	at java.io.DataOutputStream.writeUTF(DataOutputStream.java:364)
	at java.io.DataOutputStream.writeUTF(DataOutputStream.java:323)
	at com.typesafe.config.impl.SerializedConfigValue.writeValueData(SerializedConfigValue.scala:314)
```

Java DataOutputStream's writeUTF method states that it cannot write more than 65535 bytes. So when serializing a Config object, if any String is more than 65535 bytes, it is not serializable.";

const CONFIG_SOURCE: &str = r#"package com.typesafe.config.impl;

import java.io.DataInput;
import java.io.DataOutput;
import java.io.IOException;

class SerializedConfigValue extends AbstractConfigValue {

    private static void writeValueData(DataOutput out, ConfigValue value) throws IOException {
        SerializedValueType st = SerializedValueType.forValue(value);
        out.writeByte(st.ordinal());
        switch (st) {
        case BOOLEAN:
            out.writeBoolean(((ConfigBoolean) value).unwrapped());
            break;
        case INT:
            out.writeInt(((ConfigInt) value).unwrapped());
            out.writeUTF(((ConfigNumber) value).transformToString());
            break;
        case STRING:
            out.writeUTF(((ConfigString) value).unwrapped());
            break;
        default:
            throw new IOException("Unhandled serialized value type: " + st);
        }
    }

    private static AbstractConfigValue readValueData(DataInput in, SimpleConfigOrigin origin) throws IOException {
        int stb = in.readUnsignedByte();
        SerializedValueType st = SerializedValueType.forInt(stb);
        if (st == null) {
            throw new IOException("Unknown serialized value type: " + stb);
        }
        switch (st) {
        case BOOLEAN:
            return new ConfigBoolean(origin, in.readBoolean());
        case INT:
            int vi = in.readInt();
            String si = in.readUTF();
            return new ConfigInt(origin, vi, si);
        case STRING:
            return new ConfigString.Quoted(origin, in.readUTF());
        default:
            throw new IOException("Unhandled serialized value type: " + st);
        }
    }
}
"#;

const GEOTOOLS_SOURCE: &str = r#"package org.geotools.data.shapefile.index;

import java.io.IOException;
import java.io.RandomAccessFile;
import java.util.ArrayList;
import java.util.Collection;
import java.util.List;

public class SimpleFeatureIO {

    static final int MAX_BYTES_LENGTH = 65535;

    RandomAccessFile raf;

    void writeAttribute(AttributeDescriptor ad, Object value) throws IOException {
        Class<?> binding = ad.getType().getBinding();
        raf.writeBoolean(value == null);
        if (value == null) {
            return;
        }
        if (binding == Boolean.class) {
            raf.writeBoolean((Boolean) value);
        } else if (binding == Integer.class) {
            raf.writeInt((Integer) value);
        } else if (binding == String.class) {
            if (isBigString(ad)) {
                String strVal = (String) value;
                List<String> values = new ArrayList<>();
                if (strVal.getBytes().length >= MAX_BYTES_LENGTH) {
                    values.addAll(split(strVal, 32767));
                } else {
                    values.add(strVal);
                }
                raf.writeInt(values.size());
                for (String evalue : values) {
                    raf.writeUTF(evalue);
                }
            } else {
                raf.writeUTF((String) value);
            }
        } else {
            throw new IOException("Unsupported attribute binding: " + binding);
        }
    }

    Object readAttribute(AttributeDescriptor ad) throws IOException {
        boolean isNull = raf.readBoolean();
        if (isNull) {
            return null;
        }
        Class<?> binding = ad.getType().getBinding();
        if (binding == Boolean.class) {
            return raf.readBoolean();
        } else if (binding == Integer.class) {
            return raf.readInt();
        } else if (binding == String.class) {
            if (isBigString(ad)) {
                int parts = raf.readInt();
                StringBuilder sb = new StringBuilder();
                for (int i = 0; i < parts; i++) {
                    sb.append(raf.readUTF());
                }
                return sb.toString();
            }
            return raf.readUTF();
        }
        throw new IOException("Unsupported attribute binding: " + binding);
    }

    private static Collection<String> split(String value, int size) {
        List<String> parts = new ArrayList<>();
        for (int start = 0; start < value.length(); start += size) {
            parts.add(value.substring(start, Math.min(value.length(), start + size)));
        }
        return parts;
    }
}
"#;

const HAZELCAST_TEST: &str = r#"package com.hazelcast.nio;

import static org.junit.Assert.assertEquals;

import org.junit.Test;

public class LongStringTest {

    @Test
    public void testLongStringRoundTrip() throws Exception {
        StringBuilder sb = new StringBuilder();
        while (sb.length() < 70000) {
            sb.append("abcdefghij");
        }
        String expected = sb.toString();
        assertEquals(expected, serializeAndDeserialize(expected));
    }
}
"#;

const DBEAVER_DIALOG: &str = r#"package org.jkiss.dbeaver.ui.dialogs;

import org.eclipse.swt.SWT;
import org.eclipse.swt.widgets.Composite;
import org.eclipse.swt.widgets.Text;

public class EditTextDialog extends BaseDialog {

    private Text textEdit;
    private String value;

    @Override
    protected Composite createDialogArea(Composite parent) {
        Composite composite = super.createDialogArea(parent);
        textEdit = new Text(composite, SWT.BORDER | SWT.MULTI | SWT.V_SCROLL);
        textEdit.setText(value == null ? "" : value);
        textEdit.setTextLimit(Integer.MAX_VALUE);
        return composite;
    }

    @Override
    protected void okPressed() {
        value = textEdit.getText();
        super.okPressed();
    }
}
"#;

fn pom(deps: &[(&str, &str)]) -> String {
    let mut s = String::from("<project xmlns=\"http://maven.apache.org/POM/4.0.0\">\n  <modelVersion>4.0.0</modelVersion>\n  <dependencies>\n");
    for (g, a) in deps {
        s.push_str(&format!("    <dependency>\n      <groupId>{g}</groupId>\n      <artifactId>{a}</artifactId>\n    </dependency>\n"));
    }
    s.push_str("  </dependencies>\n</project>\n");
    s
}

fn filler(topic: &str, words: usize) -> String {
    let base = format!("The {topic} problem shows up under load and the workaround we use is to restart the service after a while");
    base.split(' ').cycle().take(words).collect::<Vec<_>>().join(" ")
}

fn config_geotools(out: &Path) {
    let mut api = SimApi::default();
    api.repo("lightbend/config", "Java", &[
        ("build.sbt", "lazy val root = (project in file(\".\"))\n"),
        ("config/src/main/java/com/typesafe/config/impl/SerializedConfigValue.java", CONFIG_SOURCE),
    ]);
    let driver = api.issue(Issue::new("lightbend/config", 600, "UTFDataFormatException in SerializedConfigValue.scala:314", CONFIG_BODY).open());
    let _ = driver;

    let geo_pom = pom(&[("org.locationtech.jts", "jts-core"), ("javax.media", "jai_core"), ("junit", "junit")]);
    api.repo("geotools/geotools", "Java", &[("pom.xml", &geo_pom), ("modules/library/main/pom.xml", &pom(&[("org.locationtech.jts", "jts-core")]))]);
    api.repo("eclipse/jetty.project", "Java", &[("pom.xml", &pom(&[("org.slf4j", "slf4j-api"), ("junit", "junit")]))]);
    api.repo("hazelcast/hazelcast", "Java", &[("pom.xml", &pom(&[("junit", "junit"), ("org.mockito", "mockito-core")]))]);
    api.repo("jenkinsci/jenkins", "Java", &[("pom.xml", &pom(&[("org.kohsuke.stapler", "stapler"), ("junit", "junit")]))]);
    api.repo("orientechnologies/orientdb", "Java", &[("pom.xml", &pom(&[("com.googlecode.concurrentlinkedhashmap", "concurrentlinkedhashmap-lru")]))]);
    api.repo("neo4j/neo4j", "Java", &[("pom.xml", &pom(&[("org.apache.lucene", "lucene-core")]))]);
    api.repo("square/wire", "Java", &[("build.gradle", "dependencies {\n    implementation 'com.squareup.okio:okio:2.4.0'\n}\n")]);
    api.repo("dbeaver/dbeaver", "Java", &[("pom.xml", &pom(&[("org.eclipse.swt", "org.eclipse.swt")]))]);
    api.repo("OpenRefine/OpenRefine", "Java", &[("pom.xml", &pom(&[("org.apache.poi", "poi"), ("org.json", "json")]))]);
    api.repo("languagetool-org/languagetool", "Java", &[("pom.xml", &pom(&[("org.apache.lucene", "lucene-core")]))]);

    let jetty_body = filler("session", 120) + "\n\njava.io.UTFDataFormatException: encoded string too long: 70123 bytes";
    let hz_body = "Serializing a map entry whose value is a very long string fails with java.io.UTFDataFormatException: encoded string too long: 66000 bytes.";
    let jenkins_body = filler("build log", 180) + "\n\nCaused by: java.io.UTFDataFormatException: encoded string too long: 81234 bytes";
    let geo_body = "Writing a String attribute with a big size (String bytes greater than 65535 bytes) on SimpleFeatureIO we got an exception:\n\n\
java.io.UTFDataFormatException: encoded string too long: 71530 bytes\n\n\
Seems like due to DataOutputStream.writeUTF String size limit, SimpleFeatureIO doesn't allow to write/read big String sizes. \
This PR adds support for big String sizes using a flag on the attribute descriptor user data, splitting the value in chunks written one after another.";
    let orient_body = filler("record", 90) + "\n\njava.io.UTFDataFormatException: encoded string too long";
    let neo_body = "Upgrading the index dependency fixes the UTFDataFormatException: encoded string too long in the schema store.\n\nFixed by https://github.com/neo4j/neo4j/pull/8901";
    let wire_body = "Proto files with huge string constants cannot be compiled: UTFDataFormatException encoded string too long.";
    let dbeaver_body = filler("editor", 60) + "\n\nUTFDataFormatException: encoded string too long: 65600 bytes when saving a long value";
    let refine_body = filler("project save", 140) + "\n\njava.io.UTFDataFormatException: encoded string too long: 99999 bytes";
    let lt_body = filler("rule file", 70) + "\n\nUTFDataFormatException encoded string too long while loading the dictionary";

    let hits = vec![
        api.issue(Issue::new("eclipse/jetty.project", 1210, "Session attribute too large to persist", &jetty_body).comments(&["Duplicate of the session store rewrite.", "Closing as won't fix."])),
        api.issue(Issue::new("hazelcast/hazelcast", 9045, "Serialization fails for strings longer than 64KB", hz_body).comments(&["Fixed in 3f9c2a1b7e, released with the next patch version."])),
        api.issue(Issue::new("jenkinsci/jenkins", 3012, "Build log serialization error", &jenkins_body).comments(&["Same here.", "Any news?", "Works in the latest weekly."])),
        api.issue(Issue::new("geotools/geotools", 2600, "[GEOT-6237] Support for big String (byte length > 65535)", geo_body).comments(&["Thanks, added a test with a 100k string.", "Merged."]).pull()),
        api.issue(Issue::new("orientechnologies/orientdb", 7211, "Cannot store document with long string", &orient_body).comments(&["Please use a binary field for this."])),
        api.issue(Issue::new("neo4j/neo4j", 8890, "Schema store exception on long property", neo_body)),
        api.issue(Issue::new("square/wire", 512, "Huge string constants", wire_body)),
        api.issue(Issue::new("dbeaver/dbeaver", 4455, "Cannot save long text value", &dbeaver_body).comments(&["Fixed in https://github.com/dbeaver/dbeaver/commit/9a8b7c6d5e4f3a2b1c0d9e8f7a6b5c4d3e2f1a0b"])),
        api.issue(Issue::new("OpenRefine/OpenRefine", 1502, "Project with long cells cannot be saved", &refine_body).comments(&["Confirmed.", "Duplicate of another report."])),
        api.issue(Issue::new("languagetool-org/languagetool", 890, "Dictionary loading fails", &lt_body).comments(&["Fixed by the new loader."])),
    ];
    api.pull_files("geotools/geotools", 2600, &[("modules/library/main/src/main/java/org/geotools/data/shapefile/index/SimpleFeatureIO.java", GEOTOOLS_SOURCE)]);
    api.commit("hazelcast/hazelcast", "3f9c2a1b7e", &[("hazelcast/src/test/java/com/hazelcast/nio/LongStringTest.java", HAZELCAST_TEST)]);
    api.pull_files("neo4j/neo4j", 8901, &[("community/pom.xml", &pom(&[("org.apache.lucene", "lucene-core")]))]);
    api.commit("dbeaver/dbeaver", "9a8b7c6d5e4f3a2b1c0d9e8f7a6b5c4d3e2f1a0b", &[("plugins/org.jkiss.dbeaver.ui/src/org/jkiss/dbeaver/ui/dialogs/EditTextDialog.java", DBEAVER_DIALOG)]);
    api.search("UTFDataFormatException encoded string too long in:body,comments language:java state:closed", hits);

    let client = client(api, out);
    let config = RunConfig { parallelism: 1, ..RunConfig::default() };
    let rec = recommend(&client, &DriverSource::Remote(IssueRef::new("lightbend", "config", 600).unwrap()), &config).unwrap();
    print!("{}", rec.table());
}

const MAUI_BODY: &str = "While using a Swedish language Maui Server project concurrently from multiple processes, I got several 500 Internal Server Errors with the following traceback:

...AnalysisEngineProcessException: Annotator processing failed.
...Caused by: java.lang.StringIndexOutOfBoundsException: String index out of range: 8

The root cause seems to be that the Snowball stemmer used by SwedishStemmer is not thread safe. (see a similar issue in https://github.com/deeplearning4j/deeplearning4j/issues/31)";

fn maui_dl4j(out: &Path) {
    let mut api = SimApi::default();
    api.repo("zelandiya/maui-server", "Java", &[
        ("pom.xml", &pom(&[("org.apache.uima", "uimaj-core"), ("commons-io", "commons-io")])),
        ("src/main/java/maui/stemmers/SwedishStemmer.java", "package maui.stemmers;\n\npublic class SwedishStemmer extends Stemmer {\n    private final org.tartarus.snowball.ext.swedishStemmer stemmer = new org.tartarus.snowball.ext.swedishStemmer();\n\n    public String stem(String word) {\n        stemmer.setCurrent(word);\n        stemmer.stem();\n        return stemmer.getCurrent();\n    }\n}\n"),
    ]);
    api.issue(Issue::new("zelandiya/maui-server", 10, "SwedishStemmer (and DutchStemmer?) not thread safe", MAUI_BODY).open());
    api.repo("deeplearning4j/deeplearning4j", "Java", &[(
        "pom.xml",
        &pom(&[("org.apache.uima", "uimaj-core"), ("org.tartarus", "snowball"), ("junit", "junit")]),
    )]);
    api.repo("languagetool-org/languagetool", "Java", &[("pom.xml", &pom(&[("org.apache.lucene", "lucene-core")]))]);
    api.repo("apache/opennlp", "Java", &[("pom.xml", &pom(&[("junit", "junit")]))]);
    let dl4j_body = "Hi, I've tried to run the word2vec (using the supplied Uima tokenizer) and I keep getting this error for many of the words in the sentences...\n\n\
...AnalysisEngineProcessException: Annotator processing failed.\n...Caused by: java.lang.StringIndexOutOfBoundsException: String index out of range: 7";
    let hits = vec![
        api.issue(Issue::new("languagetool-org/languagetool", 1201, "Tokenizer crash on empty line", "java.lang.StringIndexOutOfBoundsException: String index out of range: 0 when the input has an empty line")),
        api.issue(Issue::new("apache/opennlp", 88, "Sentence detector index error", "StringIndexOutOfBoundsException: String index out of range: -1 in the sentence detector")),
        api.issue(Issue::new("deeplearning4j/deeplearning4j", 31, "Stemmer exception when training word2vec with the supplied tweets_clean.txt file!", dl4j_body).comments(&["It seems that the reason is that the SnowballStemmer IS NOT thread safe...", "Fixed by using one stemmer per thread."])),
        api.issue(Issue::new("languagetool-org/languagetool", 1305, "Index error in the Swedish rules", "String index out of range while checking Swedish text, StringIndexOutOfBoundsException")),
        api.issue(Issue::new("apache/opennlp", 91, "POS tagger out of range", "java.lang.StringIndexOutOfBoundsException: String index out of range: 3")),
    ];
    api.search("StringIndexOutOfBoundsException string index out of range in:body,comments language:java state:closed", hits);
    let client = client(api, out);
    let config = RunConfig { parallelism: 1, ..RunConfig::default() };
    let rec = recommend(&client, &DriverSource::Remote(IssueRef::new("zelandiya", "maui-server", 10).unwrap()), &config).unwrap();
    print!("{}", rec.table());
}

fn empty_search(out: &Path) {
    let dir = reset(out);
    let issue = IssueDocument::new(IssueRef::new("acme", "notes", 42).unwrap(), "Dark theme colors ignored", "Switching to the dark theme leaves the list background white.");
    fs::write(dir.join("issue.json"), serde_json::to_string_pretty(&issue).unwrap() + "\n").unwrap();
    let client = GitHubClient::new(RecordingTransport::new(SimApi::default(), dir.join("api")));
    let config = RunConfig::default();
    let rec = recommend(&client, &DriverSource::File(dir.join("issue.json")), &config).unwrap();
    assert!(rec.candidates.is_empty());
}

fn miner(out: &Path) {
    let mut api = SimApi::default();
    for repo in ["zelandiya/maui-server", "acme/notes", "acme/widgets", "example/parser", "example/server"] {
        api.repo(repo, "Java", &[]);
    }
    let a = api.issue(Issue::new("zelandiya/maui-server", 10, "SwedishStemmer (and DutchStemmer?) not thread safe", MAUI_BODY));
    let b = api.issue(Issue::new("acme/notes", 7, "Crash on rotate", "Looks like a similar bug to https://github.com/acme/notes/issues/3 which we fixed last year."));
    let c = api.issue(
        Issue::new("acme/widgets", 19, "Layout breaks on tablets", "Layout breaks on tablets in landscape.")
            .comments(&["I think this is a similar bug: see acme/widgets#4", "Upstream has the same problem: https://github.com/Example/Server/issues/77"]),
    );
    let d = api.issue(Issue::new("example/parser", 5, "Parser hangs", "A similar problem was reported before but I cannot find it."));
    let e = api.issue(Issue::new("example/server", 12, "Leaking sockets", "Similar problem to https://github.com/netty/netty/issues/5012 and https://github.com/square/okhttp/issues/1"));
    api.search("\"similar bug\" language:java", vec![a.clone(), b, c]);
    api.search("\"similar problem\" language:java", vec![d, e, a]);
    let client = client(api, &out.join("api"));
    let keywords: Vec<String> = bugnav::corpus::DEFAULT_KEYWORDS.iter().map(|s| s.to_string()).collect();
    let pairs = mine_similar_pairs(&client, &keywords, 10, Some("java")).unwrap();
    fs::write(out.join("golden_pairs.jsonl"), to_jsonl(&pairs)).unwrap();
}

fn main() {
    let root = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "crates/bugnav/tests/fixtures".into()));
    config_geotools(&root.join("config_geotools"));
    maui_dl4j(&root.join("maui_dl4j"));
    empty_search(&root.join("empty_search"));
    fs::create_dir_all(root.join("miner")).unwrap();
    miner(&root.join("miner"));
}
