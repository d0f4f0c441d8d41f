def water_age_stat(en):
    res = en.getComputedQualityTimeSeries()
    return max(res.NodeQuality[-1])

result = water_age_stat(en)
