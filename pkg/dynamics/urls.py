from .views import RunRecordViewSet
from rest_framework.routers import DefaultRouter

router = DefaultRouter()

router.register(r"runs", RunRecordViewSet, basename="runs")
app_name = "dynamics"
urlpatterns = [] + router.urls
