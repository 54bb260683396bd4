//! A small seeded sweep written to CSV, then summarized.

use gnp_minors::harness::{read_records, render_table, run_experiment, summarize, ExperimentConfig, TRIALS_FILE};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::temp_dir().join("gnp-minors-experiment");
    let config = ExperimentConfig::from_json(&format!(
        r#"{{
            "regime": "dense",
            "grid": {{ "n": [2000, 5000], "np": [40, 100, 400], "eps": [0.2] }},
            "seeds": {{ "count": 4, "base": 0 }},
            "output": {:?}
        }}"#,
        dir
    ))?;
    let records = run_experiment(&config)?;
    println!("{} trials written to {}", records.len(), dir.join(TRIALS_FILE).display());

    let reread = read_records(std::io::BufReader::new(std::fs::File::open(dir.join(TRIALS_FILE))?))?;
    assert_eq!(reread, records);
    print!("{}", render_table(&summarize(&reread)?));
    Ok(())
}
