from django.test import TestCase
from rest_framework.test import APIClient

from dynamics.models import RunRecord


class RunApiTests(TestCase):
    def setUp(self):
        self.client = APIClient()

    def test_gen_is_recorded(self):
        response = self.client.post("/api/runs/", {"command": "gen", "window": 5}, format="json")
        self.assertEqual(response.status_code, 201)
        self.assertEqual(response.data["report"], "01001\n")
        self.assertEqual(response.data["status"], "pass")
        self.assertEqual(response.data["config"]["window"], 5)

        listing = self.client.get("/api/runs/")
        self.assertEqual(listing.status_code, 200)
        self.assertEqual(len(listing.data), 1)

        detail = self.client.get(f"/api/runs/{response.data['id']}/")
        self.assertEqual(detail.data["command"], "gen")

    def test_source_outside_data_directory(self):
        response = self.client.post("/api/runs/", {"command": "gen", "shift": "../manage.py"}, format="json")
        self.assertEqual(response.status_code, 400)
        self.assertIn("shift", response.data)
        self.assertFalse(RunRecord.objects.exists())

    def test_unknown_command(self):
        response = self.client.post("/api/runs/", {"command": "shell"}, format="json")
        self.assertEqual(response.status_code, 400)

    def test_failed_verdict(self):
        response = self.client.post(
            "/api/runs/",
            {"command": "validate-jump", "jump": "bad_k0.jump", "window": 200, "nmax": 5},
            format="json",
        )
        self.assertEqual(response.status_code, 201)
        self.assertEqual(response.data["status"], "fail")

    def test_error_is_recorded(self):
        response = self.client.post(
            "/api/runs/", {"command": "returns", "word": "2", "window": 200, "nmax": 5}, format="json"
        )
        self.assertEqual(response.status_code, 400)
        self.assertIn("error", response.data)
        record = RunRecord.objects.get()
        self.assertEqual(record.status, RunRecord.Status.ERROR)
        self.assertEqual(record.command, "returns")
