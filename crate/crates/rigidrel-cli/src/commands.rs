//! Subcommand implementations.
//!
//! Every command returns the process exit code: 0 for a positive verdict,
//! 1 for a negative one. Errors of any kind bubble up as `anyhow::Error`
//! and exit with code 2; no verdict is printed on that path.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use rigidrel::construct::{
    cantor_relation, ordinal_relation, product_relation_lex, product_relation_main,
    rigid_linear_order, CantorPoint, LabeledPair, SpineDesignation,
};
use rigidrel::fraenkel::verify_lemma_with_bound;
use rigidrel::search::{
    is_hereditarily_rigid_with_bound, is_rigid_with_bound, is_strongly_rigid_with_bound,
    DEFAULT_AUTOMORPHISM_BOUND, DEFAULT_ENDOMORPHISM_BOUND, DEFAULT_HEREDITARY_BOUND,
    HereditaryVerdict, RigidityVerdict, StrongRigidityVerdict,
};
use rigidrel::census::{census_table, CensusMethod, CensusRow, CLASS_CENSUS_BOUND, LABELED_CENSUS_BOUND};
use rigidrel::fraenkel::DEFAULT_LEMMA_BOUND;
use rigidrel::Relation;

use crate::format::{parse_relation, serialize_relation, to_dot};
use crate::{BuildKind, CheckMode, MethodArg, OutputOpts};

fn load_relation(path: &Path) -> Result<Relation> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    parse_relation(&text).with_context(|| format!("cannot parse {}", path.display()))
}

fn with_pool<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match threads {
        None => Ok(f()),
        Some(k) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(k)
                .build()
                .context("cannot build thread pool")?;
            Ok(pool.install(f))
        }
    }
}

pub fn run_check(file: &Path, mode: CheckMode, max_n: Option<usize>) -> Result<u8> {
    let r = load_relation(file)?;
    match mode {
        CheckMode::Rigid => {
            let bound = max_n.unwrap_or(DEFAULT_AUTOMORPHISM_BOUND);
            match is_rigid_with_bound(&r, bound)? {
                RigidityVerdict::Rigid => {
                    println!("RIGID");
                    Ok(0)
                }
                RigidityVerdict::NotRigid { witness } => {
                    println!("NOT RIGID");
                    println!("witness: {witness}");
                    Ok(1)
                }
            }
        }
        CheckMode::Strong => {
            let bound = max_n.unwrap_or(DEFAULT_ENDOMORPHISM_BOUND);
            match is_strongly_rigid_with_bound(&r, bound)? {
                StrongRigidityVerdict::StronglyRigid => {
                    println!("STRONGLY RIGID");
                    Ok(0)
                }
                StrongRigidityVerdict::NotStronglyRigid { witness } => {
                    println!("NOT STRONGLY RIGID");
                    println!("witness: {witness}");
                    Ok(1)
                }
            }
        }
        CheckMode::Hereditary => {
            let bound = max_n.unwrap_or(DEFAULT_HEREDITARY_BOUND);
            match is_hereditarily_rigid_with_bound(&r, bound)? {
                HereditaryVerdict::HereditarilyRigid => {
                    println!("HEREDITARILY RIGID");
                    Ok(0)
                }
                HereditaryVerdict::NotHereditarilyRigid { subset, witness } => {
                    println!("NOT HEREDITARILY RIGID");
                    let subset = subset
                        .iter()
                        .map(|v| v.to_string())
                        .collect::<Vec<_>>()
                        .join(" ");
                    println!("witness subset: {{{subset}}}");
                    println!("witness: {witness}");
                    Ok(1)
                }
            }
        }
        CheckMode::Irreflexive => match r.loop_vertex() {
            None => {
                println!("IRREFLEXIVE");
                Ok(0)
            }
            Some(v) => {
                println!("NOT IRREFLEXIVE");
                println!("witness: loop at {v}");
                Ok(1)
            }
        },
    }
}

fn parse_points(points: &[String]) -> Result<Vec<CantorPoint>> {
    points
        .iter()
        .map(|bits| Ok(CantorPoint::new(bits.as_str())?))
        .collect()
}

fn parse_pairs(pairs: &[String]) -> Result<Vec<LabeledPair>> {
    pairs
        .iter()
        .map(|entry| {
            let (bits, label) = entry
                .split_once(':')
                .with_context(|| format!("pair {entry:?} is not of the form <bits>:<label>"))?;
            let label: usize = label
                .parse()
                .with_context(|| format!("pair {entry:?} has a malformed label"))?;
            Ok(LabeledPair::new(CantorPoint::new(bits)?, label))
        })
        .collect()
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text)
            .with_context(|| format!("cannot write {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn run_build(kind: &BuildKind) -> Result<u8> {
    let (relation, opts) = match kind {
        BuildKind::Linorder { count, out } => (rigid_linear_order(*count), out),
        BuildKind::Ordinal { gamma, out } => (ordinal_relation(*gamma), out),
        BuildKind::Cantor {
            points,
            zstar,
            chain,
            out,
        } => {
            let points = parse_points(points)?;
            let spine = SpineDesignation::new(*zstar, chain.clone())?;
            (cantor_relation(&points, &spine)?, out)
        }
        BuildKind::ProductMain {
            pairs,
            base,
            zstar,
            chain,
            out,
        } => {
            let pairs = parse_pairs(pairs)?;
            let base = load_relation(base)?;
            let spine = SpineDesignation::new(*zstar, chain.clone())?;
            (product_relation_main(&pairs, &base, &spine)?, out)
        }
        BuildKind::ProductLex { pairs, base, out } => {
            let pairs = parse_pairs(pairs)?;
            let base = load_relation(base)?;
            (product_relation_lex(&pairs, &base)?, out)
        }
    };
    build_output(&relation, opts)
}

fn build_output(relation: &Relation, opts: &OutputOpts) -> Result<u8> {
    let text = if opts.dot {
        to_dot(relation)
    } else {
        serialize_relation(relation)
    };
    emit(&text, opts.out.as_ref())?;
    if opts.verify {
        let bound = opts.max_n.unwrap_or(DEFAULT_AUTOMORPHISM_BOUND);
        match is_rigid_with_bound(relation, bound)? {
            RigidityVerdict::Rigid => {
                eprintln!("verified: RIGID");
            }
            RigidityVerdict::NotRigid { witness } => {
                eprintln!("verified: NOT RIGID");
                eprintln!("witness: {witness}");
                return Ok(1);
            }
        }
    }
    Ok(0)
}

pub fn run_fraenkel(
    atoms: usize,
    max_support: usize,
    max_n: Option<usize>,
    threads: Option<usize>,
) -> Result<u8> {
    let bound = max_n.unwrap_or(DEFAULT_LEMMA_BOUND);
    let report = with_pool(threads, || verify_lemma_with_bound(atoms, max_support, bound))??;
    print!("{report}");
    Ok(if report.all_nonrigid() { 0 } else { 1 })
}

pub fn run_census(max_n: usize, method: MethodArg, threads: Option<usize>) -> Result<u8> {
    let (method, bound) = match method {
        MethodArg::Auto => (None, CLASS_CENSUS_BOUND),
        MethodArg::Labeled => (Some(CensusMethod::Labeled), LABELED_CENSUS_BOUND),
        MethodArg::Classes => (Some(CensusMethod::IsomorphClasses), CLASS_CENSUS_BOUND),
    };
    if max_n > bound {
        return Err(rigidrel::Error::BoundExceeded {
            what: "census",
            n: max_n,
            bound,
        }
        .into());
    }
    let rows = with_pool(threads, || census_table(max_n, method))??;
    println!("{}", CensusRow::tsv_header());
    for row in rows {
        println!("{}", row.tsv_line());
    }
    Ok(0)
}
