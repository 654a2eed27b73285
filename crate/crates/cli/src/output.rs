use std::fs;
use std::io::Write;
use std::path::PathBuf;

use anyhow::Context;

use cliquecolor::Graph;

/// Where results go: reports to stdout (text or JSON), artifacts to the
/// output directory when one is set, else to stdout as well.
pub struct Output {
    json: bool,
    dir: Option<PathBuf>,
}

impl Output {
    pub fn new(json: bool, dir: Option<PathBuf>) -> anyhow::Result<Self> {
        if let Some(d) = &dir {
            fs::create_dir_all(d).with_context(|| format!("creating {}", d.display()))?;
        }
        Ok(Self { json, dir })
    }

    pub fn has_dir(&self) -> bool {
        self.dir.is_some()
    }

    pub fn report(&self, json: &serde_json::Value, text: &str) -> anyhow::Result<()> {
        let mut stdout = std::io::stdout().lock();
        if self.json {
            writeln!(stdout, "{}", serde_json::to_string_pretty(json)?)?;
        } else if !text.is_empty() {
            writeln!(stdout, "{text}")?;
        }
        Ok(())
    }

    pub fn artifact(&self, name: &str, contents: &str) -> anyhow::Result<()> {
        match &self.dir {
            Some(d) => {
                let path = d.join(name);
                fs::write(&path, contents).with_context(|| format!("writing {}", path.display()))
            }
            None => {
                std::io::stdout().lock().write_all(contents.as_bytes())?;
                Ok(())
            }
        }
    }

    pub fn graph(&self, name: &str, g: &Graph) -> anyhow::Result<()> {
        self.artifact(&format!("{name}.json"), &g.to_json_string())
    }
}
