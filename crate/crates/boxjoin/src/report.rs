//! Machine-parseable benchmark reports: one tab-separated record per run
//! with a fixed header and column order. Time columns are the only ones that
//! vary between identical runs.

#[derive(Clone, Debug)]
pub struct BenchRecord {
    pub instance: String,
    pub algorithm: String,
    pub wall_ms: f64,
    pub n_tuples: usize,
    pub cover_size: usize,
    pub cert_size: usize,
    pub witnesses: usize,
    pub output_z: usize,
}

pub const REPORT_HEADER: &str =
    "instance\talgorithm\twall_ms\tn_tuples\tcover_size\tcert_size\twitnesses\toutput_z";

pub fn emit_report(records: &[BenchRecord]) -> String {
    let mut out = String::from(REPORT_HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&format!(
            "{}\t{}\t{:.3}\t{}\t{}\t{}\t{}\t{}\n",
            r.instance,
            r.algorithm,
            r.wall_ms,
            r.n_tuples,
            r.cover_size,
            r.cert_size,
            r.witnesses,
            r.output_z
        ));
    }
    out
}
