from django.contrib import admin

from dynamics.models import RunRecord


@admin.register(RunRecord)
class RunRecordAdmin(admin.ModelAdmin):
    list_display = ("command", "status", "created")
    list_filter = ("command", "status")
