from django.contrib import admin
from django.urls import path, include
from dynamics import urls as dynamics_urls

urlpatterns = [
    path("admin/", admin.site.urls),
    path("api/", include(dynamics_urls)),
]
