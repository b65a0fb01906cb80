from django.db import models


class RunRecord(models.Model):
    class Status(models.TextChoices):
        PASS = "pass"
        FAIL = "fail"
        ERROR = "error"

    command = models.CharField(max_length=32)
    config = models.JSONField(default=dict)
    status = models.CharField(max_length=8, choices=Status.choices)
    report = models.TextField(blank=True)
    created = models.DateTimeField(auto_now_add=True)

    class Meta:
        ordering = ["-created", "-id"]

    def __str__(self):
        return f"{self.command} [{self.status}] {self.created:%Y-%m-%d %H:%M}"
