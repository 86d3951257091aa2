//! The `compare` chain driven from configuration text: geometry, jets,
//! predictions, oracle and the summary table.

use droplet::cli::{commands, RunConfig};

fn main() -> droplet::Result<()> {
    let dir = std::env::temp_dir().join("droplet-compare-example");
    let text = format!(
        "potential = ginibre\ntau = 1\nm = 36\nprobes = ring:1.05:16, ring:1.1:16\ndigits = 40\noutput_dir = {}\n",
        dir.display()
    );
    let cfg = RunConfig::parse(&text)?;
    let out = commands::compare(&cfg)?;
    for c in &out.checks {
        println!("{}", c.summary());
    }
    println!("{}", std::fs::read_to_string(dir.join("summary.csv"))?);
    Ok(())
}
