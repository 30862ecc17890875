import json
from concurrent.futures import ThreadPoolExecutor

import pytest
from fastapi.testclient import TestClient

from dinfra.service import create_app


@pytest.fixture(scope="module")
def client(family_registry, service_datasets_dir):
    app = create_app(model_dir=family_registry, datasets_dir=service_datasets_dir)
    with TestClient(app) as test_client:
        yield test_client


@pytest.fixture()
def empty_client(tmp_path):
    app = create_app(model_dir=tmp_path / "registry", datasets_dir=tmp_path / "datasets")
    with TestClient(app) as test_client:
        yield test_client


def relatedness_body(**overrides):
    body = {
        "main_term": "mother",
        "target_set": ["wife", "child", "love"],
        "language": "en",
        "measure": "correlation",
        "model_kind": "esa",
    }
    body.update(overrides)
    return body


class TestRelatedness:
    def test_demo_query(self, client):
        response = client.post("/relatedness", json=relatedness_body())
        assert response.status_code == 200
        payload = response.json()
        assert payload["main_term"] == "mother"
        assert [r["target"] for r in payload["results"]] == ["wife", "child", "love"]
        for result in payload["results"]:
            assert 0.0 <= result["score"] <= 1.0

    @pytest.mark.parametrize("kind", ["ri", "lsa", "esa"])
    @pytest.mark.parametrize("measure", ["cosine", "euclidean", "correlation"])
    def test_all_models_and_measures(self, client, kind, measure):
        response = client.post(
            "/relatedness", json=relatedness_body(model_kind=kind, measure=measure)
        )
        assert response.status_code == 200
        assert len(response.json()["results"]) == 3

    def test_main_term_in_targets_scores_one(self, client):
        response = client.post(
            "/relatedness", json=relatedness_body(target_set=["mother", "child"])
        )
        scores = {r["target"]: r["score"] for r in response.json()["results"]}
        assert scores["mother"] == pytest.approx(1.0, abs=1e-6)

    def test_empty_target_set_is_bad_request(self, client):
        response = client.post("/relatedness", json=relatedness_body(target_set=[]))
        assert response.status_code == 400
        payload = response.json()
        assert payload["code"] == "bad_request" and "message" in payload

    def test_unsupported_language_is_bad_request(self, client):
        response = client.post("/relatedness", json=relatedness_body(language="xx"))
        assert response.status_code == 400
        assert response.json()["code"] == "bad_request"

    def test_oversized_target_set_is_bad_request(self, client):
        targets = [f"t{i}" for i in range(101)]
        response = client.post("/relatedness", json=relatedness_body(target_set=targets))
        assert response.status_code == 400
        assert response.json()["code"] == "bad_request"

    def test_missing_model_is_404(self, client):
        response = client.post("/relatedness", json=relatedness_body(language="de"))
        assert response.status_code == 404
        assert response.json()["code"] == "model_not_found"

    def test_oov_main_term_is_422(self, client):
        response = client.post("/relatedness", json=relatedness_body(main_term="zzzqqq"))
        assert response.status_code == 422
        payload = response.json()
        assert payload["code"] == "term_not_found"
        assert "zzzqqq" in payload["message"]

    def test_oov_target_is_per_target_error(self, client):
        response = client.post(
            "/relatedness", json=relatedness_body(target_set=["wife", "zzzqqq"])
        )
        assert response.status_code == 200
        results = response.json()["results"]
        assert "score" in results[0]
        assert "error" in results[1] and results[1]["target"] == "zzzqqq"

    def test_case_folding(self, client):
        response = client.post(
            "/relatedness", json=relatedness_body(main_term="Mother", target_set=["mother"])
        )
        assert response.json()["results"][0]["score"] == pytest.approx(1.0, abs=1e-6)

    def test_get_alias_matches_post(self, client):
        get_response = client.get(
            "/relatedness",
            params={
                "main_term": "mother",
                "targets": "wife,child,love",
                "language": "en",
                "measure": "correlation",
                "model_kind": "esa",
            },
        )
        post_response = client.post("/relatedness", json=relatedness_body())
        assert get_response.status_code == 200
        assert get_response.json() == post_response.json()

    def test_concurrent_identical_requests_byte_identical(self, client):
        def fire(_):
            return client.post("/relatedness", json=relatedness_body()).content

        with ThreadPoolExecutor(max_workers=32) as pool:
            bodies = list(pool.map(fire, range(32)))
        assert len(set(bodies)) == 1

    def test_statelessness_under_permutation(self, client):
        requests = [
            relatedness_body(),
            relatedness_body(measure="cosine"),
            relatedness_body(model_kind="ri"),
            relatedness_body(main_term="car", target_set=["automobile", "voyage"]),
        ]

        def run_sequence(sequence):
            return [client.post("/relatedness", json=r).content for r in sequence]

        forward = run_sequence(requests)
        backward = run_sequence(requests[::-1])[::-1]
        assert forward == backward


class TestCorrelation:
    def correlation_body(self, **overrides):
        body = {
            "dataset": "mc",
            "language": "en",
            "measure": "cosine",
            "model_kind": "lsa",
        }
        body.update(overrides)
        return body

    def test_mc_evaluation(self, client):
        response = client.post("/correlation", json=self.correlation_body())
        assert response.status_code == 200
        payload = response.json()
        assert -1.0 <= payload["rho"] <= 1.0
        assert payload["n_scored"] + payload["n_skipped"] == 30

    def test_cache_header_on_repeat(self, client):
        body = self.correlation_body(measure="euclidean", model_kind="esa")
        first = client.post("/correlation", json=body)
        second = client.post("/correlation", json=body)
        assert first.headers["X-Cache"] == "miss"
        assert second.headers["X-Cache"] == "hit"
        assert first.content == second.content

    def test_unsupported_language_is_400(self, client):
        response = client.post("/correlation", json=self.correlation_body(language="xx"))
        assert response.status_code == 400
        assert response.json()["code"] == "bad_request"

    def test_unknown_dataset_is_400(self, client):
        response = client.post("/correlation", json=self.correlation_body(dataset="men"))
        assert response.status_code == 400

    def test_missing_model_is_404(self, client):
        response = client.post("/correlation", json=self.correlation_body(language="fr"))
        assert response.status_code == 404
        assert response.json()["code"] == "model_not_found"

    def test_missing_dataset_file_is_404(self, family_registry, tmp_path):
        app = create_app(model_dir=family_registry, datasets_dir=tmp_path / "none")
        with TestClient(app) as isolated:
            response = isolated.post("/correlation", json=self.correlation_body())
        assert response.status_code == 404
        assert response.json()["code"] == "dataset_not_found"

    def test_insufficient_coverage_is_422(self, client):
        # The ws353 file contains none of the model's vocabulary.
        response = client.post("/correlation", json=self.correlation_body(dataset="ws353"))
        assert response.status_code == 422
        assert response.json()["code"] == "insufficient_coverage"

    def test_zero_policy(self, client):
        response = client.post(
            "/correlation", json=self.correlation_body(oov_policy="zero", dataset="rg")
        )
        assert response.status_code == 200
        payload = response.json()
        assert payload["oov_policy"] == "zero"
        assert payload["n_scored"] + payload["n_skipped"] == 65

    def test_get_alias(self, client):
        response = client.get(
            "/correlation",
            params={"dataset": "mc", "language": "en", "measure": "cosine", "model_kind": "lsa"},
        )
        assert response.status_code == 200
        assert response.json()["dataset"] == "mc"


class TestDiscovery:
    def test_models_lists_registry(self, client):
        response = client.get("/models")
        assert response.status_code == 200
        entries = response.json()
        assert {e["kind"] for e in entries} == {"ri", "lsa", "esa"}
        for entry in entries:
            assert set(entry) == {
                "language",
                "kind",
                "fingerprint",
                "corpus_id",
                "created_at",
                "file_path",
            }

    def test_models_empty_registry(self, empty_client):
        assert empty_client.get("/models").json() == []

    def test_models_filter(self, client):
        entries = client.get("/models", params={"kind": "esa"}).json()
        assert len(entries) == 1 and entries[0]["kind"] == "esa"

    def test_languages_returns_exactly_twelve(self, client):
        languages = client.get("/languages").json()
        assert len(languages) == 12
        assert languages == ["en", "pt", "de", "es", "fr", "sv", "it", "nl", "zh", "ru", "ar", "fa"]

    def test_health(self, client):
        response = client.get("/health")
        assert response.status_code == 200
        payload = response.json()
        assert payload["status"] == "ok"
        assert isinstance(payload["loaded_models"], int)

    def test_schema_is_openapi_document(self, client):
        response = client.get("/schema")
        assert response.status_code == 200
        document = response.json()
        assert "openapi" in document
        assert "/relatedness" in document["paths"]
        assert "/correlation" in document["paths"]

    def test_ui_route_serves_built_frontend(self, family_registry, service_datasets_dir):
        from conftest import REPO_ROOT

        dist = REPO_ROOT / "frontend" / "dist"
        if not dist.is_dir():
            pytest.skip("frontend not built (run npm run build in frontend/)")
        app = create_app(
            model_dir=family_registry, datasets_dir=service_datasets_dir, ui_dir=dist
        )
        with TestClient(app) as ui_client:
            page = ui_client.get("/ui/")
            assert page.status_code == 200
            assert "<html" in page.text
            assert ui_client.get("/ui/main.js").status_code == 200
            redirect = ui_client.get("/", follow_redirects=False)
            assert redirect.status_code in (302, 307)


class TestErrorShape:
    def test_all_error_paths_carry_code_and_message(self, client):
        cases = [
            client.post("/relatedness", json={"bogus": True}),
            client.post("/relatedness", json=relatedness_body(language="de")),
            client.post("/relatedness", json=relatedness_body(main_term="zzzqqq")),
            client.post("/relatedness", json=relatedness_body(target_set=[])),
            client.post(
                "/correlation",
                json={"dataset": "mc", "language": "de", "measure": "cosine", "model_kind": "ri"},
            ),
            client.get("/relatedness", params={"main_term": "a", "targets": "", "language": "en"}),
        ]
        for response in cases:
            assert response.status_code >= 400
            payload = json.loads(response.content)
            assert set(payload) == {"code", "message"}, payload
            assert payload["code"] and payload["message"]
