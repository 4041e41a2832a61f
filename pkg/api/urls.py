from django.urls import path
from . import views

urlpatterns = [
    path('check/', views.check, name='check'),
    path('trails/', views.trails, name='trails'),
    path('flowup/', views.flowup, name='flowup'),
    path('basis/', views.basis, name='basis'),
    path('check-basis/', views.check_basis, name='check_basis'),
    path('decompose/', views.decompose_spline, name='decompose'),
    path('cycle/', views.cycle, name='cycle'),
    path('qelem/', views.qelem, name='qelem'),
]
