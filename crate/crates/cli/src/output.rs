use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use log::info;
use serde_json::{json, Value};

use crate::error::{CliError, CliResult, Kind};

/// Output directory whose files appear only once completely written.
pub struct OutDir {
    root: PathBuf,
}

impl OutDir {
    pub fn create(root: &Path) -> CliResult<Self> {
        fs::create_dir_all(root)
            .map_err(|e| CliError::new(Kind::Io, e).context(format!("creating {}", root.display())))?;
        Ok(Self {
            root: root.to_path_buf(),
        })
    }

    /// Writes `name` through a temporary sibling that is renamed into place on success.
    pub fn write<F>(&self, name: &str, fill: F) -> CliResult<()>
    where
        F: FnOnce(&mut BufWriter<File>) -> ripsmap::Result<()>,
    {
        let target = self.root.join(name);
        let temp = self.root.join(format!(".{name}.tmp"));
        let io_context = |e: CliError| e.context(format!("writing {}", target.display()));
        let result = (|| -> CliResult<()> {
            let mut out = BufWriter::new(File::create(&temp)?);
            fill(&mut out)?;
            out.into_inner()
                .map_err(|e| CliError::new(Kind::Io, e.into_error()))?
                .sync_all()?;
            fs::rename(&temp, &target)?;
            Ok(())
        })();
        if result.is_err() {
            let _ = fs::remove_file(&temp);
        }
        result.map_err(io_context)?;
        info!("wrote {}", target.display());
        Ok(())
    }

    pub fn write_json(&self, name: &str, value: &Value) -> CliResult<()> {
        self.write(name, |out| {
            serde_json::to_writer_pretty(&mut *out, value)?;
            writeln!(out)?;
            Ok(())
        })
    }

    /// `metadata.json`: everything needed to rerun the command, and no timestamps.
    pub fn write_metadata(&self, command: &str, seed: u64, argv: &[String], params: Value) -> CliResult<()> {
        let value = json!({
            "tool": "ripsmap",
            "version": env!("CARGO_PKG_VERSION"),
            "command": command,
            "seed": seed,
            "argv": argv,
            "params": params,
        });
        self.write_json("metadata.json", &value)
    }
}
