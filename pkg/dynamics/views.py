import logging

from rest_framework import mixins, status, viewsets
from rest_framework.exceptions import ValidationError
from rest_framework.response import Response

from dynamics.exceptions import WorkbenchError
from dynamics.models import RunRecord
from dynamics.runner import RunConfig, record_run, run
from dynamics.serializers import RunRecordSerializer, RunRequestSerializer

logger = logging.getLogger(__name__)


class RunRecordViewSet(
    mixins.ListModelMixin,
    mixins.RetrieveModelMixin,
    viewsets.GenericViewSet,
):
    queryset = RunRecord.objects.all()
    serializer_class = RunRecordSerializer

    def create(self, request, *args, **kwargs):
        """
        Run a workbench command and store it in the ledger
        """
        serializer = RunRequestSerializer(data=request.data)
        serializer.is_valid(raise_exception=True)
        options = dict(serializer.validated_data)
        command = options.pop("command")
        config = RunConfig(**options)
        try:
            outcome = run(command, config, data_only=True)
        except WorkbenchError as exc:
            logger.info("api run of %s rejected: %s", command, exc.one_line())
            record_run(command, config, error=exc)
            raise ValidationError({"error": exc.one_line()})
        record = record_run(command, config, outcome)
        return Response(RunRecordSerializer(record).data, status=status.HTTP_201_CREATED)
