//! Deterministic artifact writers. Every artifact embeds the run
//! configuration and a content hash of its payload; no timestamps, so
//! identical config and spec produce byte-identical files.

use std::fs;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

pub fn sha256_hex(data: &str) -> String {
    let mut h = Sha256::new();
    h.update(data.as_bytes());
    let out = h.finalize();
    let mut s = String::with_capacity(64);
    for b in out {
        s.push_str(&format!("{b:02x}"));
    }
    s
}

/// JSON artifact: `{config, content_hash, payload}`.
pub fn write_json(
    dir: &Path,
    name: &str,
    config: &serde_json::Value,
    payload: serde_json::Value,
) -> std::io::Result<PathBuf> {
    let payload_str = serde_json::to_string(&payload).expect("serializable payload");
    let doc = serde_json::json!({
        "config": config,
        "content_hash": format!("sha256:{}", sha256_hex(&payload_str)),
        "payload": payload,
    });
    let path = dir.join(name);
    fs::write(&path, serde_json::to_string_pretty(&doc).expect("serializable") + "\n")?;
    Ok(path)
}

/// JSON-lines artifact with a `#`-prefixed config/hash preamble.
pub fn write_jsonl(
    dir: &Path,
    name: &str,
    config: &serde_json::Value,
    rows: &[serde_json::Value],
) -> std::io::Result<PathBuf> {
    let mut body = String::new();
    for r in rows {
        body.push_str(&serde_json::to_string(r).expect("serializable row"));
        body.push('\n');
    }
    let mut out = String::new();
    out.push_str(&format!("# config: {config}\n"));
    out.push_str(&format!("# content_hash: sha256:{}\n", sha256_hex(&body)));
    out.push_str(&body);
    let path = dir.join(name);
    fs::write(&path, out)?;
    Ok(path)
}

/// CSV artifact with a `#`-prefixed config/hash preamble.
pub fn write_csv(
    dir: &Path,
    name: &str,
    config: &serde_json::Value,
    header: &str,
    rows: &[String],
) -> std::io::Result<PathBuf> {
    let mut body = String::new();
    body.push_str(header);
    body.push('\n');
    for r in rows {
        body.push_str(r);
        body.push('\n');
    }
    let mut out = String::new();
    out.push_str(&format!("# config: {config}\n"));
    out.push_str(&format!("# content_hash: sha256:{}\n", sha256_hex(&body)));
    out.push_str(&body);
    let path = dir.join(name);
    fs::write(&path, out)?;
    Ok(path)
}

/// SVG artifact; the config and hash ride in a metadata element.
pub fn write_svg(
    dir: &Path,
    name: &str,
    config: &serde_json::Value,
    svg_body: &str,
) -> std::io::Result<PathBuf> {
    let meta = format!(
        "<metadata>config: {}; content_hash: sha256:{}</metadata>\n",
        config,
        sha256_hex(svg_body)
    );
    // inject metadata right after the opening <svg ...> tag
    let out = match svg_body.find('>') {
        Some(k) => format!("{}\n{}{}", &svg_body[..=k], meta, &svg_body[k + 1..]),
        None => svg_body.to_string(),
    };
    let path = dir.join(name);
    fs::write(&path, out)?;
    Ok(path)
}

/// Error diagnostics for failed runs.
pub fn write_error(dir: &Path, config: &serde_json::Value, kind: &str, message: &str) {
    let doc = serde_json::json!({
        "config": config,
        "error": { "kind": kind, "message": message },
    });
    let _ = fs::create_dir_all(dir);
    let _ = fs::write(
        dir.join("error.json"),
        serde_json::to_string_pretty(&doc).unwrap_or_default() + "\n",
    );
}
