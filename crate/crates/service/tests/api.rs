use amda_core::fixtures::{atm_charts, ATM_CORRECT_PIN, ATM_DISPATCH};
use amda_core::pim::read_dispatcher;
use amda_core::pipeline::build_network;
use amda_core::sim::parse_script;
use amda_service::{serve, AppState, Model};
use futures::StreamExt;
use serde_json::{json, Value};

fn atm() -> Model {
    Model {
        name: "atm".into(),
        net: build_network(&atm_charts()).unwrap(),
        disp: read_dispatcher(ATM_DISPATCH).unwrap(),
        stubs: parse_script(ATM_CORRECT_PIN).unwrap().stubs,
    }
}

async fn start(max_steps: Option<u64>) -> String {
    let listener = tokio::net::TcpListener::bind("127.0.0.1:0").await.unwrap();
    let addr = listener.local_addr().unwrap();
    tokio::spawn(serve(listener, AppState::new([atm()], max_steps)));
    format!("http://{addr}")
}

async fn call(base: &str, op: &str, session: Option<&str>, payload: Value) -> Value {
    reqwest::Client::new()
        .post(format!("{base}/api"))
        .json(&json!({ "id": 7, "op": op, "session": session, "payload": payload }))
        .send()
        .await
        .unwrap()
        .json()
        .await
        .unwrap()
}

fn instance<'a>(snapshot: &'a Value, name: &str) -> &'a Value {
    snapshot["instances"]
        .as_array()
        .unwrap()
        .iter()
        .find(|i| i["name"] == name)
        .unwrap()
}

fn events_of(view: &Value) -> Vec<(String, String)> {
    view["possible_events"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| {
            (
                e["instance"].as_str().unwrap().to_string(),
                e["event"].as_str().unwrap().to_string(),
            )
        })
        .collect()
}

/// Reads server-sent events as `(event, data)` pairs.
struct SseReader {
    stream: futures::stream::BoxStream<'static, reqwest::Result<bytes::Bytes>>,
    buf: String,
}

impl SseReader {
    async fn open(url: String) -> SseReader {
        let resp = reqwest::get(url).await.unwrap();
        assert!(resp.status().is_success());
        SseReader {
            stream: resp.bytes_stream().boxed(),
            buf: String::new(),
        }
    }

    async fn next(&mut self) -> (String, Value) {
        loop {
            if let Some(i) = self.buf.find("\n\n") {
                let block: String = self.buf.drain(..i + 2).collect();
                let mut event = String::new();
                let mut data = String::new();
                for line in block.lines() {
                    if let Some(v) = line.strip_prefix("event:") {
                        event = v.trim().to_string();
                    } else if let Some(v) = line.strip_prefix("data:") {
                        data.push_str(v.trim_start());
                    }
                }
                if event.is_empty() {
                    continue;
                }
                return (event, serde_json::from_str(&data).unwrap());
            }
            let chunk = self.stream.next().await.unwrap().unwrap();
            self.buf.push_str(std::str::from_utf8(&chunk).unwrap());
        }
    }
}

#[tokio::test]
async fn correct_pin_walkthrough_over_http() {
    let base = start(None).await;

    let models = call(&base, "models", None, json!({})).await;
    assert_eq!(models["ok"], true);
    assert_eq!(models["id"], 7);
    assert_eq!(models["result"]["models"][0]["name"], "atm");

    let created = call(&base, "instantiate", None, json!({ "model": "atm" })).await;
    assert_eq!(created["ok"], true, "{created}");
    let sid = created["session"].as_str().unwrap().to_string();
    let snap = &created["result"]["snapshot"];
    assert_eq!(instance(snap, "controller")["state_name"], "S1");
    assert!(events_of(snap).contains(&("controller".into(), "ev3".into())));
    let graph = created["result"]["graph"].as_array().unwrap();
    assert_eq!(graph[0]["id"], "A1");
    assert_eq!(graph[0]["transitions"].as_array().unwrap().len(), 11);

    let mut sse = SseReader::open(format!("{base}/events?session={sid}")).await;
    let (kind, first) = sse.next().await;
    assert_eq!(kind, "snapshot");
    assert_eq!(
        instance(&first["snapshot"], "controller")["state_name"],
        "S1"
    );

    for (event, state) in [("ev3", "S2"), ("ev8", "End")] {
        let r = call(
            &base,
            "inject_event",
            Some(&sid),
            json!({ "instance": "controller", "event": event }),
        )
        .await;
        assert_eq!(r["ok"], true, "{r}");
        let delta = &r["result"];
        let changed = delta["changed"]
            .as_array()
            .unwrap()
            .iter()
            .find(|v| v["name"] == "controller")
            .unwrap();
        assert_eq!(changed["state_name"], state);

        let (kind, pushed) = sse.next().await;
        assert_eq!(kind, "delta");
        assert_eq!(&pushed, delta);

        let snap = call(&base, "snapshot", Some(&sid), json!({})).await;
        assert_eq!(events_of(&snap["result"]), events_of(delta));
        assert_eq!(instance(&snap["result"], "controller")["state_name"], state);
    }

    let trace = call(&base, "trace", Some(&sid), json!({ "since": 0 })).await;
    let entries = trace["result"]["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 19);
    assert_eq!(trace["result"]["next"], 19);
    let tail = call(&base, "trace", Some(&sid), json!({ "since": 17 })).await;
    assert_eq!(tail["result"]["entries"].as_array().unwrap().len(), 2);
}

#[tokio::test]
async fn wrong_pin_script_stubs_per_session() {
    let base = start(None).await;
    let script = "@stub verifyPINCode PIN_code_OK := false; errors := errors + 1\n";
    let created = call(
        &base,
        "instantiate",
        None,
        json!({ "model": "atm", "script": script }),
    )
    .await;
    let sid = created["session"].as_str().unwrap().to_string();
    for ev in ["ev3", "ev8", "ev8", "ev8", "ev13", "ev15"] {
        let r = call(
            &base,
            "inject_event",
            Some(&sid),
            json!({ "instance": "controller", "event": ev }),
        )
        .await;
        assert_eq!(r["ok"], true, "{r}");
    }
    let snap = call(&base, "snapshot", Some(&sid), json!({})).await;
    let c = instance(&snap["result"], "controller");
    assert_eq!(c["state_name"], "End");
    assert_eq!(
        c["variables"]["errors"],
        json!({ "type": "integer", "value": 3 })
    );
}

#[tokio::test]
async fn errors_carry_codes() {
    let base = start(None).await;
    let code = |v: &Value| v["error"]["code"].as_str().unwrap().to_string();

    let r = call(&base, "snapshot", Some("nope"), json!({})).await;
    assert_eq!(
        (r["ok"].clone(), code(&r)),
        (json!(false), "unknown-session".into())
    );
    assert_eq!(
        code(&call(&base, "frobnicate", None, json!({})).await),
        "unknown-op"
    );
    assert_eq!(
        code(&call(&base, "instantiate", None, json!({ "model": "x" })).await),
        "unknown-model"
    );
    assert_eq!(
        code(
            &call(
                &base,
                "instantiate",
                None,
                json!({ "pim": "<pim><bogus/></pim>" })
            )
            .await
        ),
        "dtd-violation"
    );

    let created = call(&base, "instantiate", None, json!({ "model": "atm" })).await;
    let sid = created["session"].as_str().unwrap().to_string();
    let r = call(
        &base,
        "inject_event",
        Some(&sid),
        json!({ "instance": "controller", "event": "ev99" }),
    )
    .await;
    assert_eq!(code(&r), "unknown-event");
    let r = call(
        &base,
        "inject_event",
        Some(&sid),
        json!({ "instance": "ghost", "event": "ev3" }),
    )
    .await;
    assert_eq!(code(&r), "unknown-instance");
    let r = call(&base, "inject_event", Some(&sid), json!({})).await;
    assert_eq!(code(&r), "bad-request");

    assert_eq!(
        call(&base, "close", Some(&sid), json!({})).await["ok"],
        true
    );
    let r = call(&base, "snapshot", Some(&sid), json!({})).await;
    assert_eq!(code(&r), "unknown-session");

    let missing = reqwest::get(format!("{base}/events?session=zzz"))
        .await
        .unwrap();
    assert_eq!(missing.status(), 404);
}

#[tokio::test]
async fn inline_pim_without_dispatcher() {
    let base = start(Some(50)).await;
    let pim = amda_core::pim::write_pim_document(&build_network(&atm_charts()[1..2]).unwrap());
    let created = call(&base, "instantiate", None, json!({ "pim": pim })).await;
    assert_eq!(created["ok"], true, "{created}");
    assert_eq!(created["result"]["model"], "inline");
    let snap = &created["result"]["snapshot"];
    assert_eq!(snap["instances"][0]["name"], "A2");
    assert_eq!(snap["quiescent"], true);
}
