//! Subcommand implementations. Every artifact-producing command writes a
//! run manifest next to its first output.

use std::fs;
use std::path::{Path, PathBuf};

use tsa_core::clusters::{
    kmeans_cluster, load_clusters, load_embeddings, save_clusters, save_embeddings,
    train_skipgram, ClusterModel, SkipgramConfig,
};
use tsa_core::corpus::{
    generate_synthetic, load_corpus, save_corpus, split_corpus_with, SplitStrategy, SynthConfig,
};
use tsa_core::crf::{self, CrfModel, TrainConfig, TrainInstance};
use tsa_core::eval::{
    approx_randomization, baseline_all_np, baseline_sentiment, predictions_from_dump,
    predictions_to_dump, score, EvalReport, Metric, SentimentBaseline,
};
use tsa_core::features::{extract_sentiment_features, extract_target_features, FeatureConfig};
use tsa_core::lexicon::{load_lexicon, Lexicon, LexiconKind, PriorPolarity};
use tsa_core::morpho::{
    derive_tokens, dump_token_table, project_sentiment_labels, project_target_labels, Scheme,
    Task,
};
use tsa_core::pipeline::{
    predict_corpus, predict_target_stage, train_pipeline, PipelineConfig, SchemeChoice,
    SENTIMENT_LABELS, TARGET_LABELS,
};
use tsa_core::rng::derive_seed;
use tsa_core::{Error, Result};

use crate::manifest::{read_manifest, ManifestBuilder};
use crate::{
    BaselineArgs, ClusterArgs, EmbedImportArgs, EmbedTrainArgs, EvaluateArgs, FeatureArgs,
    LexiconCheckArgs, PredictArgs, RerunArgs, SchemeArg, SigtestArgs, SplitArgs, SweepKArgs,
    SynthArgs, TokenizeArgs, TrainArgs,
};

pub struct Ctx {
    pub argv: Vec<String>,
    pub seed: u64,
    pub threads: usize,
}

/// Resolves an input path, falling back to `TSA_DATA_DIR` for relative
/// paths that do not exist as given.
fn resolve(path: &Path) -> PathBuf {
    if path.exists() || path.is_absolute() {
        return path.to_path_buf();
    }
    if let Ok(base) = std::env::var("TSA_DATA_DIR") {
        let joined = Path::new(&base).join(path);
        if joined.exists() {
            return joined;
        }
    }
    path.to_path_buf()
}

fn parse_kind(s: &str) -> Result<LexiconKind> {
    match s {
        "prior" | "prior_list" => Ok(LexiconKind::PriorList),
        "scored" => Ok(LexiconKind::Scored),
        "gloss" | "gloss_keyed" => Ok(LexiconKind::GlossKeyed),
        other => Err(Error::InvalidConfig(format!(
            "unknown lexicon kind {other:?} (expected prior|scored|gloss)"
        ))),
    }
}

/// `path:kind[:threshold]`
fn parse_lexicon_spec(spec: &str) -> Result<(PathBuf, LexiconKind, f64)> {
    let parts: Vec<&str> = spec.split(':').collect();
    match parts.as_slice() {
        [path, kind] => Ok((PathBuf::from(path), parse_kind(kind)?, 0.2)),
        [path, kind, threshold] => {
            let t: f64 = threshold.parse().map_err(|_| {
                Error::InvalidConfig(format!("bad threshold {threshold:?} in lexicon spec"))
            })?;
            Ok((PathBuf::from(path), parse_kind(kind)?, t))
        }
        _ => Err(Error::InvalidConfig(format!(
            "lexicon spec {spec:?} is not path:kind[:threshold]"
        ))),
    }
}

fn parse_scheme_choice(arg: &SchemeArg) -> Result<SchemeChoice> {
    if arg.combined {
        return Ok(SchemeChoice::CombinedD3Atb);
    }
    match &arg.scheme {
        Some(s) => SchemeChoice::parse(s),
        None => Err(Error::InvalidConfig(
            "either --scheme or --combined is required".into(),
        )),
    }
}

/// Owns the loaded feature resources; `config()` borrows from it.
struct FeatureBundle {
    preset: String,
    lexicons: Vec<Lexicon>,
    cluster: Option<ClusterModel>,
    prev_label_conjunctions: bool,
}

impl FeatureBundle {
    fn load(args: &FeatureArgs, manifest: &mut ManifestBuilder) -> Result<Self> {
        if args.features != "basic" && args.features != "best" {
            return Err(Error::InvalidConfig(format!(
                "unknown feature preset {:?} (expected basic|best)",
                args.features
            )));
        }
        let mut lexicons = Vec::new();
        for spec in &args.lexicons {
            let (path, kind, threshold) = parse_lexicon_spec(spec)?;
            let path = resolve(&path);
            manifest.input(&path)?;
            lexicons.push(load_lexicon(&path, kind, threshold)?);
        }
        let cluster = match &args.clusters {
            Some(path) => {
                let path = resolve(path);
                manifest.input(&path)?;
                Some(load_clusters(&path)?)
            }
            None => None,
        };
        Ok(FeatureBundle {
            preset: args.features.clone(),
            lexicons,
            cluster,
            prev_label_conjunctions: args.prev_label_conjunctions,
        })
    }

    fn config(&self) -> FeatureConfig<'_> {
        let lex_refs: Vec<&Lexicon> = self.lexicons.iter().collect();
        let mut cfg = if self.preset == "best" {
            FeatureConfig::best_linguistic(lex_refs)
        } else {
            let mut c = FeatureConfig::lexical_pos();
            c.lexicons = lex_refs;
            c.lexicon_subj = !self.lexicons.is_empty();
            c
        };
        if let Some(model) = &self.cluster {
            cfg = cfg.with_clusters(model);
        }
        cfg.prev_label_conjunctions = self.prev_label_conjunctions;
        cfg
    }

    /// Compact signature stored in model metadata and checked at predict
    /// time so train/predict feature sets cannot silently diverge.
    fn descriptor(&self) -> String {
        let mut kinds: Vec<&str> = self.lexicons.iter().map(|l| l.kind.tag()).collect();
        kinds.sort();
        format!(
            "{}|lex:{}|clusters:{}|prevconj:{}",
            self.preset,
            kinds.join(","),
            u8::from(self.cluster.is_some()),
            u8::from(self.prev_label_conjunctions)
        )
    }
}

fn write_text(path: &Path, body: &str) -> Result<()> {
    fs::write(path, body).map_err(|e| Error::io(path.display().to_string(), e))
}

pub fn synth(ctx: &Ctx, args: &SynthArgs) -> Result<()> {
    let mut manifest = ManifestBuilder::new(&ctx.argv);
    let seed = derive_seed(ctx.seed, "synth");
    let vocab_seed = args
        .vocab_seed
        .unwrap_or_else(|| derive_seed(ctx.seed, "synth-vocab"));
    manifest.seed("master", ctx.seed);
    manifest.seed("synth", seed);
    manifest.seed("synth-vocab", vocab_seed);

    let cfg = SynthConfig {
        n_posts: args.n_posts,
        vocab_seed,
        seed,
        definite_target_fraction: args.definite_fraction,
        ..Default::default()
    };
    let (posts, lexicon) = generate_synthetic(&cfg)?;
    save_corpus(&args.out, &posts)?;
    manifest.output(&args.out);
    println!(
        "wrote {} posts ({} targets) to {}",
        posts.len(),
        posts.iter().map(|p| p.gold_targets.len()).sum::<usize>(),
        args.out.display()
    );

    if let Some(lex_out) = &args.lexicon_out {
        let mut rows: Vec<String> = lexicon
            .iter()
            .filter_map(|(word, entry)| match entry.prior {
                PriorPolarity::Pos => Some(format!("{word}\tpos")),
                PriorPolarity::Neg => Some(format!("{word}\tneg")),
                PriorPolarity::Neutral => None,
            })
            .collect();
        rows.sort();
        write_text(lex_out, &(rows.join("\n") + "\n"))?;
        manifest.output(lex_out);
        println!("wrote {} lexicon entries to {}", rows.len(), lex_out.display());
    }
    manifest.write()
}

pub fn split(ctx: &Ctx, args: &SplitArgs) -> Result<()> {
    let mut manifest = ManifestBuilder::new(&ctx.argv);
    let input = resolve(&args.input);
    manifest.input(&input)?;
    let seed = derive_seed(ctx.seed, "split");
    manifest.seed("master", ctx.seed);
    manifest.seed("split", seed);

    let ratios: Vec<f64> = args
        .ratios
        .split(',')
        .map(|r| r.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::InvalidConfig(format!("bad ratios {:?}", args.ratios)))?;
    if ratios.len() != 3 {
        return Err(Error::InvalidConfig(
            "ratios must be three comma-separated fractions".into(),
        ));
    }
    let strategy = match args.strategy.as_str() {
        "stratified" => SplitStrategy::Stratified,
        "random" => SplitStrategy::Random,
        other => {
            return Err(Error::InvalidConfig(format!(
                "unknown strategy {other:?} (expected stratified|random)"
            )))
        }
    };

    let corpus = load_corpus(&input)?;
    let (train, dev, test) =
        split_corpus_with(&corpus, (ratios[0], ratios[1], ratios[2]), seed, strategy)?;
    fs::create_dir_all(&args.out_dir)
        .map_err(|e| Error::io(args.out_dir.display().to_string(), e))?;
    for (name, posts) in [("train", &train), ("dev", &dev), ("test", &test)] {
        let path = args.out_dir.join(format!("{name}.jsonl"));
        save_corpus(&path, posts)?;
        manifest.output(&path);
        println!("{name}: {} posts -> {}", posts.len(), path.display());
    }
    manifest.write()
}

pub fn tokenize(ctx: &Ctx, args: &TokenizeArgs) -> Result<()> {
    let input = resolve(&args.input);
    let scheme = Scheme::parse(&args.scheme)?;
    let corpus = load_corpus(&input)?;
    let mut body = String::new();
    for post in &corpus {
        if let Some(id) = &args.post_id {
            if &post.id != id {
                continue;
            }
        }
        body.push_str(&format!("## {}\n", post.id));
        body.push_str(&dump_token_table(&derive_tokens(post, scheme)));
        body.push('\n');
    }
    match &args.out {
        Some(out) => {
            let mut manifest = ManifestBuilder::new(&ctx.argv);
            manifest.input(&input)?;
            write_text(out, &body)?;
            manifest.output(out);
            manifest.write()?;
        }
        None => print!("{body}"),
    }
    Ok(())
}

pub fn lexicon_check(_ctx: &Ctx, args: &LexiconCheckArgs) -> Result<()> {
    let path = resolve(&args.path);
    let kind = parse_kind(&args.kind)?;
    let lex = load_lexicon(&path, kind, args.threshold)?;
    let mut pos = 0;
    let mut neg = 0;
    let mut neutral = 0;
    for (_, e) in lex.iter() {
        match e.prior {
            PriorPolarity::Pos => pos += 1,
            PriorPolarity::Neg => neg += 1,
            PriorPolarity::Neutral => neutral += 1,
        }
    }
    println!("entries      {}", lex.len());
    println!("subjective   {}", lex.subjective_count());
    println!("prior pos    {pos}");
    println!("prior neg    {neg}");
    println!("prior neutral {neutral}");
    if let Some(t) = lex.threshold {
        println!("threshold    {t}");
    }
    Ok(())
}

pub fn embed_train(ctx: &Ctx, args: &EmbedTrainArgs) -> Result<()> {
    let mut manifest = ManifestBuilder::new(&ctx.argv);
    let input = resolve(&args.input);
    manifest.input(&input)?;
    let seed = derive_seed(ctx.seed, "skipgram");
    manifest.seed("master", ctx.seed);
    manifest.seed("skipgram", seed);

    let scheme = Scheme::parse(&args.scheme)?;
    let corpus = load_corpus(&input)?;
    let sequences: Vec<Vec<String>> = corpus
        .iter()
        .map(|p| {
            derive_tokens(p, scheme)
                .tokens
                .into_iter()
                .map(|t| t.repr)
                .collect()
        })
        .collect();
    let cfg = SkipgramConfig {
        dimension: args.dim,
        window: args.window,
        negatives: args.negatives,
        epochs: args.epochs,
        min_count: args.min_count,
        seed,
        preprocessing: scheme,
        ..Default::default()
    };
    let table = train_skipgram(&sequences, &cfg)?;
    save_embeddings(&args.out, &table)?;
    manifest.output(&args.out);
    println!(
        "trained {} vectors of dimension {} -> {}",
        table.len(),
        table.dimension,
        args.out.display()
    );
    manifest.write()
}

pub fn embed_import(ctx: &Ctx, args: &EmbedImportArgs) -> Result<()> {
    let mut manifest = ManifestBuilder::new(&ctx.argv);
    let path = resolve(&args.path);
    manifest.input(&path)?;
    let scheme = Scheme::parse(&args.scheme)?;
    let table = load_embeddings(&path, scheme)?;
    if table.duplicate_count > 0 {
        eprintln!(
            "warning: {} duplicate words (last occurrence kept)",
            table.duplicate_count
        );
    }
    save_embeddings(&args.out, &table)?;
    manifest.output(&args.out);
    println!(
        "imported {} vectors of dimension {}",
        table.len(),
        table.dimension
    );
    manifest.write()
}

pub fn cluster(ctx: &Ctx, args: &ClusterArgs) -> Result<()> {
    let mut manifest = ManifestBuilder::new(&ctx.argv);
    let path = resolve(&args.embeddings);
    manifest.input(&path)?;
    let seed = derive_seed(ctx.seed, "kmeans");
    manifest.seed("master", ctx.seed);
    manifest.seed("kmeans", seed);

    let table = load_embeddings(&path, Scheme::parse(&args.scheme)?)?;
    let model = kmeans_cluster(&table, args.k, seed, args.max_iters)?;
    save_clusters(&args.out, &model, &table)?;
    manifest.output(&args.out);
    println!("clustered {} words into k={}", table.len(), args.k);
    manifest.write()
}

fn load_model(path: &Path) -> Result<CrfModel> {
    let bytes = fs::read(path).map_err(|e| Error::io(path.display().to_string(), e))?;
    crf::deserialize(&bytes)
}

fn save_model(path: &Path, model: &CrfModel) -> Result<()> {
    fs::write(path, crf::serialize(model)).map_err(|e| Error::io(path.display().to_string(), e))
}

pub fn train(ctx: &Ctx, args: &TrainArgs) -> Result<()> {
    let mut manifest = ManifestBuilder::new(&ctx.argv);
    let input = resolve(&args.input);
    manifest.input(&input)?;
    manifest.seed("master", ctx.seed);

    let choice = parse_scheme_choice(&args.scheme)?;
    let bundle = FeatureBundle::load(&args.features, &mut manifest)?;
    let feature_cfg = bundle.config();
    let corpus = load_corpus(&input)?;
    let train_cfg = TrainConfig {
        l2_sigma: args.sigma,
        max_iters: args.max_iters,
        min_feature_count: args.min_feature_count,
        ..Default::default()
    };

    let started = std::time::Instant::now();
    let mut model = match args.task.as_str() {
        "target" => {
            let scheme = choice.target_scheme();
            let mut data = Vec::with_capacity(corpus.len());
            for post in &corpus {
                let seq = derive_tokens(post, scheme);
                let labels = project_target_labels(post, &seq)?;
                data.push(TrainInstance::new(
                    extract_target_features(post, &seq, &feature_cfg)?,
                    labels.iter().map(|l| l.as_str().to_string()).collect(),
                ));
            }
            let mut m = crf::train(Task::Target, &TARGET_LABELS, &data, &train_cfg)?;
            m.meta.insert("scheme".into(), scheme.name().into());
            m
        }
        "sentiment" => {
            let scheme = choice.sentiment_scheme();
            let teacher = match &args.target_model {
                Some(tm_path) => {
                    let tm_path = resolve(tm_path);
                    manifest.input(&tm_path)?;
                    Some(load_model(&tm_path)?)
                }
                None => None,
            };
            let mut data = Vec::with_capacity(corpus.len());
            let mut polar = 0usize;
            for post in &corpus {
                let seq = derive_tokens(post, scheme);
                let sent_labels = project_sentiment_labels(post, &seq)?;
                polar += sent_labels
                    .iter()
                    .filter(|l| l.as_str() != "NEUTRAL")
                    .count();
                let e_labels = match &teacher {
                    Some(tm) => {
                        let pcfg = PipelineConfig::new(
                            choice,
                            feature_cfg.clone(),
                            feature_cfg.clone(),
                        );
                        predict_target_stage(post, tm, &pcfg)?.1
                    }
                    None => project_target_labels(post, &seq)?,
                };
                let atoms = extract_sentiment_features(post, &seq, &e_labels, &feature_cfg)?;
                let edge_atoms = if feature_cfg.prev_label_conjunctions {
                    atoms
                        .iter()
                        .enumerate()
                        .map(|(i, v)| if i == 0 { vec![] } else { v.clone() })
                        .collect()
                } else {
                    vec![]
                };
                data.push(
                    TrainInstance::new(
                        atoms,
                        sent_labels.iter().map(|l| l.as_str().to_string()).collect(),
                    )
                    .with_edges(edge_atoms),
                );
            }
            if polar == 0 {
                return Err(Error::Train {
                    message: "sentiment training data has no polar tokens".into(),
                });
            }
            let mut m = crf::train(Task::Sentiment, &SENTIMENT_LABELS, &data, &train_cfg)?;
            m.meta.insert("scheme".into(), scheme.name().into());
            m
        }
        other => {
            return Err(Error::InvalidConfig(format!(
                "unknown task {other:?} (expected target|sentiment)"
            )))
        }
    };
    model.meta.insert("features".into(), bundle.descriptor());
    model.meta.insert("pipeline".into(), choice.name());
    manifest.timing("train", started.elapsed().as_millis() as u64);

    save_model(&args.out, &model)?;
    manifest.output(&args.out);
    println!(
        "trained {} model: {} features, {} labels -> {}",
        args.task,
        model.n_features(),
        model.n_labels(),
        args.out.display()
    );
    manifest.write()
}

fn check_feature_meta(model: &CrfModel, descriptor: &str, what: &str) -> Result<()> {
    if let Some(trained) = model.meta.get("features") {
        if trained != descriptor {
            return Err(Error::Mismatch(format!(
                "{what} model was trained with features {trained:?} but this run supplies \
                 {descriptor:?}; pass the same --features/--lexicon/--clusters flags"
            )));
        }
    }
    Ok(())
}

pub fn predict(ctx: &Ctx, args: &PredictArgs) -> Result<()> {
    let mut manifest = ManifestBuilder::new(&ctx.argv);
    let input = resolve(&args.input);
    let tm_path = resolve(&args.target_model);
    let sm_path = resolve(&args.sentiment_model);
    manifest.input(&input)?;
    manifest.input(&tm_path)?;
    manifest.input(&sm_path)?;

    let choice = parse_scheme_choice(&args.scheme)?;
    let bundle = FeatureBundle::load(&args.features, &mut manifest)?;
    let target_model = load_model(&tm_path)?;
    let sentiment_model = load_model(&sm_path)?;
    check_feature_meta(&target_model, &bundle.descriptor(), "target")?;
    check_feature_meta(&sentiment_model, &bundle.descriptor(), "sentiment")?;

    let cfg = PipelineConfig::new(choice, bundle.config(), bundle.config());
    let corpus = load_corpus(&input)?;
    let predictions =
        predict_corpus(&corpus, &target_model, &sentiment_model, &cfg, ctx.threads)?;
    write_text(&args.out, &predictions_to_dump(&predictions))?;
    manifest.output(&args.out);
    let spans: usize = predictions.iter().map(|p| p.spans.len()).sum();
    println!(
        "predicted {spans} spans over {} posts -> {}",
        corpus.len(),
        args.out.display()
    );
    manifest.write()
}

fn print_report_table(report: &EvalReport) {
    let pct = |x: f64| format!("{:.1}", x * 100.0);
    println!("metric            value");
    println!("target_recall     {}", pct(report.target_recall));
    println!("target_precision  {}", pct(report.target_precision));
    println!("target_f          {}", pct(report.target_f));
    println!("f_pos             {}", pct(report.f_pos));
    println!("f_neg             {}", pct(report.f_neg));
    println!("acc_sent          {}", pct(report.acc_sent));
    println!("f_all             {}", pct(report.f_all));
    if report.precision_undefined {
        println!("note: precision undefined (no predictions); reported as 0");
    }
}

pub fn evaluate(ctx: &Ctx, args: &EvaluateArgs) -> Result<()> {
    match args.match_mode.as_str() {
        "subset" => {}
        "overlap" => {
            return Err(Error::InvalidConfig(
                "mention-overlap matching is a reserved stub; its exact semantics \
                 are undefined and only subset matching is implemented"
                    .into(),
            ))
        }
        other => {
            return Err(Error::InvalidConfig(format!(
                "unknown match mode {other:?} (expected subset)"
            )))
        }
    }
    let mut manifest = ManifestBuilder::new(&ctx.argv);
    let gold_path = resolve(&args.gold);
    let preds_path = resolve(&args.predictions);
    manifest.input(&gold_path)?;
    manifest.input(&preds_path)?;

    let gold = load_corpus(&gold_path)?;
    let dump = fs::read_to_string(&preds_path)
        .map_err(|e| Error::io(preds_path.display().to_string(), e))?;
    let predictions = predictions_from_dump(&preds_path.display().to_string(), &dump)?;
    let report = score(&gold, &predictions)?;
    print_report_table(&report);
    let body = serde_json::to_string_pretty(&report)
        .map_err(|e| Error::InvalidConfig(e.to_string()))?;
    write_text(&args.out, &body)?;
    manifest.output(&args.out);
    manifest.write()
}

pub fn baseline(ctx: &Ctx, args: &BaselineArgs) -> Result<()> {
    let mut manifest = ManifestBuilder::new(&ctx.argv);
    let input = resolve(&args.input);
    manifest.input(&input)?;

    let (variant, lex) = match args.mode.as_str() {
        "allnp" | "majority" => (SentimentBaseline::Majority, None),
        "lexicon" => {
            let spec = args.lexicon.as_ref().ok_or_else(|| {
                Error::InvalidConfig("--mode lexicon requires --lexicon path:kind[:t]".into())
            })?;
            let (path, kind, threshold) = parse_lexicon_spec(spec)?;
            let path = resolve(&path);
            manifest.input(&path)?;
            (
                SentimentBaseline::Lexicon,
                Some(load_lexicon(&path, kind, threshold)?),
            )
        }
        other => {
            return Err(Error::InvalidConfig(format!(
                "unknown baseline mode {other:?} (expected allnp|majority|lexicon)"
            )))
        }
    };

    let corpus = load_corpus(&input)?;
    let mut predictions = Vec::with_capacity(corpus.len());
    for post in &corpus {
        let spans = baseline_all_np(post);
        let spans = baseline_sentiment(post, &spans, variant, lex.as_ref())?;
        predictions.push(tsa_core::eval::Prediction {
            post_id: post.id.clone(),
            spans,
        });
    }
    write_text(&args.out, &predictions_to_dump(&predictions))?;
    manifest.output(&args.out);
    let spans: usize = predictions.iter().map(|p| p.spans.len()).sum();
    println!("baseline ({}) predicted {spans} spans", args.mode);
    manifest.write()
}

pub fn sigtest(ctx: &Ctx, args: &SigtestArgs) -> Result<()> {
    let mut manifest = ManifestBuilder::new(&ctx.argv);
    let gold_path = resolve(&args.gold);
    let a_path = resolve(&args.a);
    let b_path = resolve(&args.b);
    manifest.input(&gold_path)?;
    manifest.input(&a_path)?;
    manifest.input(&b_path)?;
    let seed = derive_seed(ctx.seed, "sigtest");
    manifest.seed("master", ctx.seed);
    manifest.seed("sigtest", seed);

    let gold = load_corpus(&gold_path)?;
    let read_preds = |p: &Path| -> Result<Vec<tsa_core::eval::Prediction>> {
        let body =
            fs::read_to_string(p).map_err(|e| Error::io(p.display().to_string(), e))?;
        predictions_from_dump(&p.display().to_string(), &body)
    };
    let preds_a = read_preds(&a_path)?;
    let preds_b = read_preds(&b_path)?;
    let metric = Metric::parse(&args.metric)?;
    let result = approx_randomization(&preds_a, &preds_b, &gold, metric, args.iters, seed)?;

    let line = format!(
        "{}\t{:.6}\t{:.6}\t{}\t{}",
        result.metric.name(),
        result.delta_observed,
        result.p_value,
        result.iterations,
        result.seed
    );
    println!("metric\tdelta_observed\tp_value\titerations\tseed");
    println!("{line}");
    if let Some(out) = &args.out {
        write_text(
            out,
            &format!("metric\tdelta_observed\tp_value\titerations\tseed\n{line}\n"),
        )?;
        manifest.output(out);
        manifest.write()?;
    }
    Ok(())
}

pub fn sweep_k(ctx: &Ctx, args: &SweepKArgs) -> Result<()> {
    let mut manifest = ManifestBuilder::new(&ctx.argv);
    let emb_path = resolve(&args.embeddings);
    let train_path = resolve(&args.train);
    let dev_path = resolve(&args.dev);
    manifest.input(&emb_path)?;
    manifest.input(&train_path)?;
    manifest.input(&dev_path)?;
    manifest.seed("master", ctx.seed);

    let grid: Vec<usize> = args
        .grid
        .split(',')
        .map(|k| k.trim().parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::InvalidConfig(format!("bad grid {:?}", args.grid)))?;
    if grid.is_empty() {
        return Err(Error::InvalidConfig("empty k grid".into()));
    }

    let choice = parse_scheme_choice(&args.scheme)?;
    if args.features.clusters.is_some() {
        return Err(Error::InvalidConfig(
            "sweep-k supplies its own cluster models; drop --clusters".into(),
        ));
    }
    let bundle = FeatureBundle::load(&args.features, &mut manifest)?;
    let table = load_embeddings(&emb_path, choice.target_scheme())?;
    let train_posts = load_corpus(&train_path)?;
    let dev_posts = load_corpus(&dev_path)?;

    fs::create_dir_all(&args.out_dir)
        .map_err(|e| Error::io(args.out_dir.display().to_string(), e))?;
    let sweep_path = args.out_dir.join("sweep.tsv");
    let mut rows = vec![
        "k\ttarget_recall\ttarget_precision\ttarget_f\tf_pos\tf_neg\tacc_sent\tf_all"
            .to_string(),
    ];

    for &k in &grid {
        let kseed = derive_seed(ctx.seed, &format!("kmeans-k{k}"));
        manifest.seed(&format!("kmeans-k{k}"), kseed);
        let cluster_model = kmeans_cluster(&table, k.min(table.len()), kseed, 100)?;
        if k > table.len() {
            eprintln!(
                "warning: k={k} exceeds vocabulary ({}); clamped",
                table.len()
            );
        }

        let base = bundle.config();
        let mut cfg = PipelineConfig::new(
            choice,
            base.clone().with_clusters(&cluster_model),
            base.with_clusters(&cluster_model),
        );
        cfg.target_train.max_iters = args.max_iters;
        cfg.sentiment_train.max_iters = args.max_iters;

        let (tm, sm) = train_pipeline(&train_posts, &cfg)?;
        let predictions = predict_corpus(&dev_posts, &tm, &sm, &cfg, ctx.threads)?;
        let report = score(&dev_posts, &predictions)?;
        let report_path = args.out_dir.join(format!("report_k{k}.json"));
        write_text(
            &report_path,
            &serde_json::to_string_pretty(&report)
                .map_err(|e| Error::InvalidConfig(e.to_string()))?,
        )?;
        write_text(
            &args.out_dir.join(format!("preds_k{k}.tsv")),
            &predictions_to_dump(&predictions),
        )?;
        println!(
            "k={k}: R={:.3} P={:.3} F={:.3} acc={:.3} f_all={:.3}",
            report.target_recall,
            report.target_precision,
            report.target_f,
            report.acc_sent,
            report.f_all
        );
        rows.push(format!(
            "{k}\t{:.6}\t{:.6}\t{:.6}\t{:.6}\t{:.6}\t{:.6}\t{:.6}",
            report.target_recall,
            report.target_precision,
            report.target_f,
            report.f_pos,
            report.f_neg,
            report.acc_sent,
            report.f_all
        ));
    }

    write_text(&sweep_path, &(rows.join("\n") + "\n"))?;
    manifest.output(&sweep_path);
    for &k in &grid {
        manifest.output(&args.out_dir.join(format!("report_k{k}.json")));
        manifest.output(&args.out_dir.join(format!("preds_k{k}.tsv")));
    }
    println!("sweep table -> {}", sweep_path.display());
    manifest.write()
}

pub fn rerun(args: &RerunArgs) -> i32 {
    let manifest = match read_manifest(&args.manifest) {
        Ok(m) => m,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    crate::run_argv(&manifest.command)
}
