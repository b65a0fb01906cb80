from rest_framework import serializers

from dynamics.exceptions import WorkbenchError
from dynamics.models import RunRecord
from dynamics.runner import COMMANDS, is_inline_jump, is_inline_shift, resolve_path


class RunRecordSerializer(serializers.ModelSerializer):
    class Meta:
        model = RunRecord
        fields = "__all__"


class RunRequestSerializer(serializers.Serializer):
    """A run posted to the API; sources must be inline or inside the data directory."""

    command = serializers.ChoiceField(choices=COMMANDS)
    shift = serializers.CharField(default="fibonacci")
    jump = serializers.CharField(required=False)
    word = serializers.CharField(required=False)
    window = serializers.IntegerField(required=False, min_value=1)
    nmax = serializers.IntegerField(required=False, min_value=1)
    seed = serializers.IntegerField(required=False, min_value=0)
    relaxed = serializers.BooleanField(default=False)
    steps = serializers.IntegerField(default=1)
    at = serializers.IntegerField(required=False, min_value=0)
    anchors = serializers.IntegerField(default=10, min_value=1)

    def _data_file(self, value):
        try:
            resolve_path(value, data_only=True)
        except WorkbenchError as exc:
            raise serializers.ValidationError(exc.one_line())
        return value

    def validate_shift(self, value):
        return value if is_inline_shift(value) else self._data_file(value)

    def validate_jump(self, value):
        return value if is_inline_jump(value) else self._data_file(value)
