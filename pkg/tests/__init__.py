"""Tests package for grs3d"""
