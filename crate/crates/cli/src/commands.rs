use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;

use invsphere_core::geometry::embed as embed_general;
use invsphere_core::scale::mean_norm;
use invsphere_core::{
    ball_to_cap, brute_force_knn, cap_to_ball, cap_to_spheroid, embed_simplified, generate, mean_center,
    recall_at_k, sweep_scale, unembed, unembed_simplified, Dataset, EmbeddedDataset, EmbeddingParams, KnnMetric,
    MetricContext,
};

use crate::args::*;
use crate::error::{CliError, Result};
use crate::io::{read_dataset, write_atomic, write_dataset, Format};
use crate::records::{read_records, write_records, BallRecord, CapRecord, SpheroidRecord};

pub fn run(command: &Command) -> Result<()> {
    match command {
        Command::Embed(args) => embed(args),
        Command::Unembed(args) => unembed_cmd(args),
        Command::Cap2ball(args) => cap2ball(args),
        Command::Ball2cap(args) => ball2cap(args),
        Command::Cap2spheroid(args) => cap2spheroid(args),
        Command::Sweep(args) => sweep(args),
        Command::KnnEval(args) => knn_eval(args),
        Command::Generate(args) => generate_cmd(args),
    }
}

struct Formats {
    input: Format,
    output: Format,
}

fn formats(io: &Io) -> Result<Formats> {
    let input = Format::resolve(io.format, &io.input)?;
    let output = io
        .output_format
        .or_else(|| Format::from_path(&io.output))
        .unwrap_or(input);
    Ok(Formats { input, output })
}

fn read_direction(path: &Path, s: f64) -> Result<EmbeddingParams> {
    let format = Format::from_path(path).unwrap_or(Format::Csv);
    let v = read_dataset(path, format)?;
    if v.len() != 1 {
        return Err(CliError::Precondition(format!(
            "{}: expected a single row holding v, found {} rows",
            path.display(),
            v.len()
        )));
    }
    Ok(EmbeddingParams::new(v.row(0).to_vec(), s)?)
}

fn check_positive(name: &str, s: f64) -> Result<()> {
    if s > 0.0 && s.is_finite() {
        Ok(())
    } else {
        Err(CliError::Precondition(format!("--{name} must be positive and finite, got {s}")))
    }
}

fn embed(args: &EmbedArgs) -> Result<()> {
    let f = formats(&args.io)?;
    if args.v_file.is_some() && args.s == ScaleArg::Sweep {
        return Err(CliError::Precondition(
            "--s sweep evaluates the pole direction and cannot be combined with --v-file".into(),
        ));
    }
    let mut x = read_dataset(&args.io.input, f.input)?;
    if args.center {
        x = mean_center(&x)?;
    }
    let s = match args.s {
        ScaleArg::Value(s) => s,
        ScaleArg::MeanNorm => mean_norm(&x)?,
        ScaleArg::Sweep => {
            let result = sweep_scale(&x, &args.grid.config(false))?;
            log::info!("sweep picked s={} (ABID {})", result.best_s, result.best_abid());
            result.best_s
        }
    };
    let y = match &args.v_file {
        Some(path) => embed_general(&x, &read_direction(path, s)?)?,
        None => embed_simplified(&x, s)?,
    };
    write_dataset(y.as_dataset(), &args.io.output, f.output)?;
    println!("s={s}");
    Ok(())
}

fn unembed_cmd(args: &UnembedArgs) -> Result<()> {
    check_positive("s", args.s)?;
    let f = formats(&args.io)?;
    let params = args.v_file.as_deref().map(|p| read_direction(p, args.s)).transpose()?;
    let y = EmbeddedDataset::new(read_dataset(&args.io.input, f.input)?)?;
    let x = match params {
        Some(params) => unembed(&y, &params)?,
        None => unembed_simplified(&y, args.s)?,
    };
    write_dataset(&x, &args.io.output, f.output)
}

fn cap2ball(args: &RecordArgs) -> Result<()> {
    let records = read_records::<CapRecord>(&args.input)?;
    let balls = records
        .items
        .iter()
        .enumerate()
        .map(|(i, rec)| {
            let ball = rec.to_cap().and_then(|cap| cap_to_ball(&cap, rec.s));
            ball.map(|b| BallRecord::from_ball(&b, rec.s)).map_err(|e| CliError::record(i, e))
        })
        .collect::<Result<Vec<_>>>()?;
    write_records(&args.output, &balls, records.single)
}

fn ball2cap(args: &RecordArgs) -> Result<()> {
    let records = read_records::<BallRecord>(&args.input)?;
    let caps = records
        .items
        .iter()
        .enumerate()
        .map(|(i, rec)| {
            let cap = rec.to_ball().and_then(|ball| ball_to_cap(&ball, rec.s));
            cap.map(|c| CapRecord::from_cap(&c, rec.s)).map_err(|e| CliError::record(i, e))
        })
        .collect::<Result<Vec<_>>>()?;
    write_records(&args.output, &caps, records.single)
}

fn cap2spheroid(args: &SpheroidArgs) -> Result<()> {
    let records = read_records::<CapRecord>(&args.records.input)?;
    // v is shared, the scale comes with each record
    let params = read_direction(&args.v_file, 1.0)?;
    let mut out = Vec::with_capacity(records.items.len());
    for (i, rec) in records.items.iter().enumerate() {
        let sph = EmbeddingParams::new(params.v().to_vec(), rec.s)
            .and_then(|params| rec.to_cap().and_then(|cap| cap_to_spheroid(&cap, &params)))
            .map_err(|e| CliError::record(i, e))?;
        out.push(SpheroidRecord::from_spheroid(&sph, rec.s));
    }
    write_records(&args.records.output, &out, records.single)
}

fn sweep(args: &SweepArgs) -> Result<()> {
    let format = Format::resolve(args.format, &args.input)?;
    let x = read_dataset(&args.input, format)?;
    let result = sweep_scale(&x, &args.grid.config(!args.no_center))?;
    let mut table = String::new();
    writeln!(table, "# best_s={:.16e} mean_norm={:.16e}", result.best_s, result.mean_norm).unwrap();
    writeln!(table, "# s,abid").unwrap();
    for (s, a) in result.grid.iter().zip(&result.abid_curve) {
        match a {
            Some(a) => writeln!(table, "{s:.16e},{a:.16e}").unwrap(),
            None => writeln!(table, "{s:.16e},nan").unwrap(),
        }
    }
    write_atomic(&args.output, table.as_bytes())?;
    println!("best_s={} abid={} mean_norm={}", result.best_s, result.best_abid(), result.mean_norm);
    Ok(())
}

#[derive(Debug, Serialize)]
struct KnnReport {
    k: usize,
    n_queries: usize,
    recall: f64,
    s: f64,
    metric: &'static str,
    identical_lists: bool,
}

fn knn_eval(args: &KnnEvalArgs) -> Result<()> {
    let base = read_dataset(&args.base, Format::resolve(args.format, &args.base)?)?;
    let queries = read_dataset(&args.queries, Format::resolve(args.format, &args.queries)?)?;
    let s = match args.s {
        ScaleArg::Value(s) => s,
        ScaleArg::MeanNorm => mean_norm(&base)?,
        ScaleArg::Sweep => {
            return Err(CliError::Precondition("knn-eval takes a number or 'mean-norm' for --s".into()));
        }
    };
    let truth = brute_force_knn(&base, &queries, args.k, KnnMetric::Euclidean)?;
    let eb = embed_simplified(&base, s)?;
    let eq = embed_simplified(&queries, s)?;
    let (metric, name) = match args.metric {
        EvalMetric::Bridged => (KnnMetric::BridgedOriginal(MetricContext::new(s)?), "bridged"),
        EvalMetric::Cosine => (KnnMetric::Cosine, "cosine"),
    };
    let retrieved = brute_force_knn(eb.as_dataset(), eq.as_dataset(), args.k, metric)?;
    let recall = recall_at_k(&retrieved, &truth, args.k)?;
    let report = KnnReport {
        k: args.k,
        n_queries: recall.n_queries,
        recall: recall.recall,
        s,
        metric: name,
        identical_lists: retrieved
            .iter()
            .zip(&truth)
            .all(|(r, t)| r.neighbor_ids == t.neighbor_ids),
    };
    let text = serde_json::to_string_pretty(&report).map_err(|e| CliError::Precondition(e.to_string()))?;
    if let Some(path) = &args.output {
        write_atomic(path, format!("{text}\n").as_bytes())?;
    }
    println!("{text}");
    Ok(())
}

fn generate_cmd(args: &GenerateArgs) -> Result<()> {
    let format = Format::resolve(args.format, &args.output)?;
    let x: Dataset = generate(args.kind, args.dim, args.n, args.blobs, args.seed)?;
    write_dataset(&x, &args.output, format)
}
