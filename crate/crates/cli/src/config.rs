use std::collections::BTreeMap;
use std::fmt;

use planestat::asymptotics::Statistic;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Count,
    Stat,
    Oracle,
    Probe,
    Selftest,
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Command::Count => "count",
            Command::Stat => "stat",
            Command::Oracle => "oracle",
            Command::Probe => "probe",
            Command::Selftest => "selftest",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

/// Everything that determines a run's output. The output format is not
/// echoed, so CSV and JSON renderings of one configuration carry the same
/// content.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub precision: u32,
    pub max_n: u64,
    pub n_grid: Vec<u64>,
    pub statistic: Option<Statistic>,
    pub n: Option<u64>,
    pub grid_size: Option<usize>,
    pub format: OutputFormat,
}

impl RunConfig {
    pub fn new(command: Command, precision: u32, max_n: u64, n_grid: Vec<u64>, format: OutputFormat) -> Self {
        RunConfig { command, precision, max_n, n_grid, statistic: None, n: None, grid_size: None, format }
    }

    /// Significant digits of every emitted decimal.
    pub fn output_digits(&self) -> u32 {
        self.precision.min(30)
    }

    /// Sorted, de-duplicated grid.
    pub fn grid(&self) -> Vec<u64> {
        let mut g = self.n_grid.clone();
        g.sort_unstable();
        g.dedup();
        g
    }

    pub fn echo(&self) -> BTreeMap<&'static str, String> {
        let mut m = BTreeMap::new();
        m.insert("command", self.command.to_string());
        m.insert("precision", self.precision.to_string());
        m.insert("output_digits", self.output_digits().to_string());
        match self.command {
            Command::Count | Command::Stat => {
                m.insert("max_n", self.max_n.to_string());
                let grid: Vec<String> = self.grid().iter().map(u64::to_string).collect();
                m.insert("n_grid", grid.join(","));
            }
            _ => {}
        }
        if let Some(s) = self.statistic {
            m.insert("statistic", s.to_string());
        }
        if let Some(n) = self.n {
            m.insert("n", n.to_string());
        }
        if let Some(g) = self.grid_size {
            m.insert("grid_size", g.to_string());
        }
        m
    }
}
