use std::fs;
use std::io::Cursor;

use weberscan::golden::{lookup, table_window, Section, ANNIHILATOR_TABLE};
use weberscan::record::{read_csv, read_jsonl, write_jsonl, CsvSink, OutputRecord};
use weberscan::scan::{run_job, run_job_collect, JobKind, Layers, ScanJob};
use weberscan::stickelberger::{PBound, SplitFilter};
use weberscan::Error;

fn torsion_job(nmin: u64, nmax: u64, budget: u64) -> ScanJob {
    ScanJob::new(JobKind::Torsion, Layers::Range { nmin, nmax }, PBound::Budget(budget))
}

fn jsonl(recs: &[OutputRecord]) -> String {
    let mut buf = Vec::new();
    for r in recs {
        write_jsonl(&mut buf, r).unwrap();
    }
    String::from_utf8(buf).unwrap()
}

#[test]
fn output_is_identical_across_worker_counts() {
    for kind in [JobKind::Torsion, JobKind::Weber, JobKind::Regulator] {
        let mut job = ScanJob::new(kind, Layers::Range { nmin: 2, nmax: 16 }, PBound::Absolute(300));
        let (a, _) = run_job_collect(&job).unwrap();
        job.workers = 3;
        let (b, _) = run_job_collect(&job).unwrap();
        assert!(!a.is_empty());
        assert_eq!(jsonl(&a), jsonl(&b), "{kind:?}");
    }
}

#[test]
fn records_come_in_pair_order() {
    let (recs, summary) = run_job_collect(&torsion_job(2, 30, 20000)).unwrap();
    let keys: Vec<(u64, u64)> = recs.iter().map(|r| (r.n, r.p)).collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    assert_eq!(summary.records, recs.len());
    assert_eq!(summary.errors, 0);
    assert_eq!(summary.layers, 29);
}

#[test]
fn resume_after_interruption_matches_clean_run() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ck.jsonl");
    let mut job = torsion_job(2, 24, 12000);
    let (clean, _) = run_job_collect(&job).unwrap();

    job.checkpoint = Some(path.clone());
    // interrupt through the sink after a few records
    let mut seen = 0;
    let err = run_job(&job, &mut |_| {
        seen += 1;
        if seen > 6 {
            Err(Error::InvalidInput("stop".into()))
        } else {
            Ok(())
        }
    });
    assert!(err.is_err());
    let (resumed, summary) = run_job_collect(&job).unwrap();
    assert!(summary.resumed_layers > 0);
    assert_eq!(jsonl(&resumed), jsonl(&clean));

    // a torn last line is dropped only with force_resume
    let text = fs::read_to_string(&path).unwrap();
    let cut = text.len() - 10;
    fs::write(&path, &text[..cut]).unwrap();
    assert!(matches!(run_job_collect(&job), Err(Error::CheckpointCorrupt { .. })));
    job.force_resume = true;
    let (forced, summary) = run_job_collect(&job).unwrap();
    assert_eq!(jsonl(&forced), jsonl(&clean));
    assert!(summary.resumed_layers > 0 && summary.resumed_layers < summary.layers);

    // the rewritten checkpoint is complete again
    job.force_resume = false;
    let (again, summary) = run_job_collect(&job).unwrap();
    assert_eq!(summary.resumed_layers, summary.layers);
    assert_eq!(jsonl(&again), jsonl(&clean));
}

#[test]
fn checkpoint_of_another_job_is_refused() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ck.jsonl");
    let mut a = torsion_job(2, 8, 2000);
    a.checkpoint = Some(path.clone());
    run_job_collect(&a).unwrap();
    let mut b = torsion_job(2, 9, 2000);
    b.checkpoint = Some(path.clone());
    assert!(matches!(run_job_collect(&b), Err(Error::CheckpointCorrupt { .. })));
    b.force_resume = true;
    let (recs, summary) = run_job_collect(&b).unwrap();
    assert_eq!(summary.resumed_layers, 0);
    b.checkpoint = None;
    b.force_resume = false;
    assert_eq!(jsonl(&recs), jsonl(&run_job_collect(&b).unwrap().0));

    fs::write(&path, "not json\n").unwrap();
    assert!(matches!(run_job_collect(&a), Err(Error::CheckpointCorrupt { .. })));
}

#[test]
fn worker_count_is_not_part_of_the_job() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ck.jsonl");
    let mut job = torsion_job(2, 10, 3000);
    job.checkpoint = Some(path);
    let (a, _) = run_job_collect(&job).unwrap();
    job.workers = 2;
    let (b, s) = run_job_collect(&job).unwrap();
    assert_eq!(s.resumed_layers, s.layers);
    assert_eq!(a, b);
}

#[test]
fn csv_and_jsonl_round_trip() {
    let mut job = ScanJob::new(JobKind::Weber, Layers::Pairs(vec![(3, 73), (2, 13), (6, 7), (5, 5), (7, 29)]), PBound::Absolute(0));
    job.filter = SplitFilter::All;
    let (recs, summary) = run_job_collect(&job).unwrap();
    // explicit pairs come out sorted by (N, p)
    assert_eq!(recs.iter().map(|r| r.n).collect::<Vec<_>>(), vec![2, 3, 5, 6, 7]);
    assert_eq!(summary.errors, 1);
    assert!(recs[2].error.as_deref().unwrap().starts_with("RamifiedPrime"));

    let text = jsonl(&recs);
    assert_eq!(read_jsonl(Cursor::new(text)).unwrap(), recs);

    let mut buf = Vec::new();
    {
        let mut sink = CsvSink::new(&mut buf).unwrap();
        for r in &recs {
            sink.write(r).unwrap();
        }
        sink.flush().unwrap();
    }
    assert_eq!(read_csv(Cursor::new(buf)).unwrap(), recs);
}

#[test]
fn genus_and_regulator_jobs() {
    let mut job = ScanJob::new(JobKind::Genus, Layers::List(vec![3, 5]), PBound::Absolute(200));
    let plan = job.plan();
    for (n, ps) in &plan {
        assert!(ps.iter().all(|&p| p > 2 && weberscan::layers::split_profile(&weberscan::LayerSpec::new(*n).unwrap(), p).unwrap().totally_split));
    }
    let (recs, _) = run_job_collect(&job).unwrap();
    let r73 = recs.iter().find(|r| r.n == 3 && r.p == 73).unwrap();
    assert_eq!((r73.rank, r73.genus_exponent), (Some(1), Some(1)));

    job.kind = JobKind::Regulator;
    job.layers = Layers::Pairs(vec![(3, 7), (5, 11), (2, 13)]);
    let (recs, _) = run_job_collect(&job).unwrap();
    let ranks: Vec<Option<u64>> = recs.iter().map(|r| r.rank).collect();
    assert_eq!(ranks, vec![Some(0), Some(1), Some(2)]);
}

#[test]
fn invalid_jobs() {
    assert!(run_job_collect(&torsion_job(5, 4, 100)).is_err());
    assert!(run_job_collect(&torsion_job(1, 4, 100)).is_err());
    let big = ScanJob::new(JobKind::Torsion, Layers::List(vec![2]), PBound::Absolute(1 << 32));
    assert!(matches!(run_job_collect(&big), Err(Error::Overflow(_))));
}

#[test]
fn table_rows_are_found_by_a_scan() {
    // every main-table row with N <= 12 inside a small budget
    let (recs, _) = run_job_collect(&torsion_job(2, 12, 12000)).unwrap();
    let rows = table_window(2, 12, 12000);
    assert!(!rows.is_empty());
    for row in rows {
        let rec = recs.iter().find(|r| r.n == row.n && r.p == row.p).unwrap_or_else(|| panic!("{}", row.provenance()));
        let want: Vec<Vec<u64>> = row.factors.iter().map(|f| f.to_vec()).collect();
        assert_eq!(rec.factors.as_ref().unwrap(), &want, "{}", row.provenance());
    }
    assert!(lookup(10, 3).unwrap().spurious);
    assert!(!recs.iter().any(|r| r.n == 10 && r.p == 3));
    assert!(ANNIHILATOR_TABLE.iter().any(|r| r.section == Section::SplitMuN));
}
