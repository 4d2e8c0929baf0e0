mod common;

use std::path::Path;
use std::process::{Command, Output};

fn braillepad(args: &[&str]) -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_braillepad"));
    cmd.args(args).env_remove("BRAILLEPAD_NOTES_DIR");
    cmd
}

fn run(cmd: &mut Command) -> (i32, String, String) {
    let Output { status, stdout, stderr } = cmd.output().unwrap();
    (status.code().unwrap_or(-1), String::from_utf8(stdout).unwrap(), String::from_utf8(stderr).unwrap())
}

fn golden_path(name: &str) -> String {
    common::golden_dir().join(name).to_string_lossy().into_owned()
}

fn dir_arg(p: &Path) -> String {
    p.to_string_lossy().into_owned()
}

#[test]
fn translate_both_ways() {
    assert_eq!(run(&mut braillepad(&["translate", "to-braille", "h"])), (0, "125\n".into(), String::new()));
    assert_eq!(run(&mut braillepad(&["translate", "to-braille", "hi"])).1, "125 24\n");
    assert_eq!(run(&mut braillepad(&["translate", "from-braille", "125 24"])).1, "hi\n");
}

#[test]
fn translate_errors_exit_2_with_position() {
    let (code, out, err) = run(&mut braillepad(&["translate", "to-braille", "\u{e9}"]));
    assert_eq!((code, out.as_str()), (2, ""));
    assert!(err.contains("position 0"), "{err}");
    let (code, _, err) = run(&mut braillepad(&["translate", "from-braille", "125 7"]));
    assert_eq!(code, 2);
    assert!(err.contains("group 2"), "{err}");
}

#[test]
fn replay_prints_golden_log_and_saves() {
    let dir = tempfile::tempdir().unwrap();
    let (code, out, _) = run(&mut braillepad(&[
        "--notes-dir",
        &dir_arg(dir.path()),
        "replay",
        &golden_path("compose_hi.jsonl"),
    ]));
    assert_eq!(code, 0);
    assert_eq!(out, common::golden("compose_hi.log"));
    let (code, out, _) = run(&mut braillepad(&["--notes-dir", &dir_arg(dir.path()), "notes", "show", "n1"]));
    assert_eq!((code, out.as_str()), (0, "hi"));
    let (_, out, _) = run(&mut braillepad(&["--notes-dir", &dir_arg(dir.path()), "notes", "list"]));
    assert_eq!(out, "n1\n");
}

#[test]
fn contacts_and_config_flags() {
    let dir = tempfile::tempdir().unwrap();
    let out_file = dir.path().join("out.log");
    let notes = dir.path().join("notes");
    let (code, _, _) = run(&mut braillepad(&[
        "--notes-dir",
        &dir_arg(&notes),
        "--contacts",
        &golden_path("contacts.tsv"),
        "--config",
        &golden_path("no_sim.conf"),
        "replay",
        &golden_path("call_mom.jsonl"),
        "--out",
        &dir_arg(&out_file),
    ]));
    assert_eq!(code, 0);
    assert_eq!(std::fs::read_to_string(out_file).unwrap(), common::golden("call_mom_no_sim.log"));
}

#[test]
fn unmet_expectation_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let script = dir.path().join("s.jsonl");
    std::fs::write(&script, "{\"type\":\"expect\",\"record\":{\"type\":\"effect\",\"text\":\"Goodbye\"}}\n").unwrap();
    let (code, _, err) =
        run(&mut braillepad(&["--notes-dir", &dir_arg(&dir.path().join("n")), "replay", &dir_arg(&script)]));
    assert_eq!(code, 1);
    assert!(err.contains("line 1"), "{err}");
}

#[test]
fn bad_script_and_bad_config_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let script = dir.path().join("s.jsonl");
    std::fs::write(
        &script,
        "{\"type\":\"flush\",\"t\":10}\n{\"type\":\"touch\",\"kind\":\"down\",\"x\":0.5,\"y\":0.5,\"t\":9}\n",
    )
    .unwrap();
    let notes = dir_arg(&dir.path().join("n"));
    let (code, out, err) = run(&mut braillepad(&["--notes-dir", &notes, "replay", &dir_arg(&script)]));
    assert_eq!((code, out.as_str()), (2, ""));
    assert!(err.contains("line 2"), "{err}");

    let config = dir.path().join("bad.conf");
    std::fs::write(&config, "tap_max_ms=fast\n").unwrap();
    let (code, _, err) =
        run(&mut braillepad(&["--notes-dir", &notes, "--config", &dir_arg(&config), "translate", "to-braille", "a"]));
    assert_eq!(code, 2);
    assert!(err.contains("line 1"), "{err}");
}

#[test]
fn notes_dir_from_environment() {
    let env_dir = tempfile::tempdir().unwrap();
    let flag_dir = tempfile::tempdir().unwrap();
    std::fs::write(env_dir.path().join("from_env.note"), "e").unwrap();
    std::fs::write(flag_dir.path().join("from_flag.note"), "f").unwrap();
    let (_, out, _) = run(braillepad(&["notes", "list"]).env("BRAILLEPAD_NOTES_DIR", env_dir.path()));
    assert_eq!(out, "from_env\n");
    let (_, out, _) = run(braillepad(&["--notes-dir", &dir_arg(flag_dir.path()), "notes", "list"])
        .env("BRAILLEPAD_NOTES_DIR", env_dir.path()));
    assert_eq!(out, "from_flag\n");
}

#[test]
fn missing_note_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _, err) = run(&mut braillepad(&["--notes-dir", &dir_arg(dir.path()), "notes", "show", "nope"]));
    assert_eq!(code, 2);
    assert!(err.contains("no note named nope"), "{err}");
}
