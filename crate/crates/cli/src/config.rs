//! key=value configuration files: read by `eval --config`, written as the
//! resolved-configuration sidecar of every command.

use std::ffi::OsString;
use std::fmt::Display;
use std::fs;
use std::path::{Path, PathBuf};

/// Splices the entries of `eval --config FILE` into `argv` right after the
/// subcommand, so flags given explicitly on the command line override them.
pub fn expand_eval_config(argv: Vec<OsString>) -> Result<Vec<OsString>, String> {
    let Some(pos) = argv.iter().position(|a| a == "eval") else {
        return Ok(argv);
    };
    let mut path: Option<PathBuf> = None;
    for (i, a) in argv.iter().enumerate().skip(pos + 1) {
        let s = a.to_string_lossy();
        if s == "--config" {
            path = argv.get(i + 1).map(PathBuf::from);
        } else if let Some(p) = s.strip_prefix("--config=") {
            path = Some(PathBuf::from(p));
        }
    }
    let Some(path) = path else {
        return Ok(argv);
    };
    let tokens = read_config(&path)?;
    let mut out = argv[..=pos].to_vec();
    out.extend(tokens);
    out.extend_from_slice(&argv[pos + 1..]);
    Ok(out)
}

/// `key = value` lines as flag tokens; `true` becomes a bare flag and
/// `false` is dropped.
fn read_config(path: &Path) -> Result<Vec<OsString>, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let mut tokens = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| format!("{}:{}: expected key=value", path.display(), i + 1))?;
        let (k, v) = (k.trim().replace('_', "-"), v.trim());
        if k == "config" {
            continue;
        }
        match v {
            "true" => tokens.push(format!("--{k}").into()),
            "false" => {}
            _ => {
                tokens.push(format!("--{k}").into());
                tokens.push(v.into());
            }
        }
    }
    Ok(tokens)
}

/// Fully expanded settings of one run.
#[derive(Debug, Default)]
pub struct Resolved {
    entries: Vec<(String, String)>,
    notes: Vec<String>,
}

impl Resolved {
    pub fn set(&mut self, key: &str, value: impl Display) {
        self.entries.push((key.to_string(), value.to_string()));
    }

    pub fn set_opt(&mut self, key: &str, value: Option<impl Display>) {
        if let Some(v) = value {
            self.set(key, v);
        }
    }

    /// Derived facts, written as comments so the file stays loadable.
    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn render(&self, command: &str) -> String {
        let mut s = format!("# netsample {command}\n");
        for n in &self.notes {
            s.push_str(&format!("# {n}\n"));
        }
        for (k, v) in &self.entries {
            s.push_str(&format!("{k} = {v}\n"));
        }
        s
    }

    pub fn write(&self, dir: &Path, command: &str) -> std::io::Result<PathBuf> {
        let path = dir.join(format!("{command}.resolved.conf"));
        fs::write(&path, self.render(command))?;
        Ok(path)
    }
}
