#ifndef HSO_DEFAULTS_HPP
#define HSO_DEFAULTS_HPP

// Bundled default catalogs and whitelist. These are data, not code: users can
// override any of them with the corresponding CLI flags. The copies under
// data/ in the source tree mirror these strings byte for byte (checked by a
// test) so they can be edited as a starting point.

namespace hso::defaults {

inline constexpr const char* kSensitiveCsv = R"(signature,permission
android.telephony.TelephonyManager#getDeviceId,READ_PHONE_STATE
android.telephony.TelephonyManager#getLine1Number,READ_PHONE_STATE
android.telephony.TelephonyManager#getSubscriberId,READ_PHONE_STATE
android.telephony.TelephonyManager#getSimSerialNumber,READ_PHONE_STATE
android.telephony.TelephonyManager#getCellLocation,ACCESS_COARSE_LOCATION
android.telephony.TelephonyManager#getCellLocation,ACCESS_FINE_LOCATION
android.telephony.TelephonyManager#getNeighboringCellInfo,ACCESS_COARSE_LOCATION
android.telephony.SmsManager#sendTextMessage,SEND_SMS
android.telephony.SmsManager#sendDataMessage,SEND_SMS
android.telephony.SmsManager#sendMultipartTextMessage,SEND_SMS
android.location.LocationManager#getLastKnownLocation,ACCESS_FINE_LOCATION
android.location.LocationManager#requestLocationUpdates,ACCESS_FINE_LOCATION
android.location.LocationManager#getBestProvider,ACCESS_FINE_LOCATION
android.net.ConnectivityManager#getActiveNetworkInfo,ACCESS_NETWORK_STATE
android.net.ConnectivityManager#getNetworkInfo,ACCESS_NETWORK_STATE
android.net.ConnectivityManager#getAllNetworkInfo,ACCESS_NETWORK_STATE
android.net.wifi.WifiManager#getConnectionInfo,ACCESS_WIFI_STATE
android.net.wifi.WifiManager#getScanResults,ACCESS_WIFI_STATE
android.net.wifi.WifiManager#getWifiState,ACCESS_WIFI_STATE
android.net.wifi.WifiManager#getConfiguredNetworks,ACCESS_WIFI_STATE
android.net.wifi.WifiManager#getDhcpInfo,ACCESS_WIFI_STATE
android.net.wifi.WifiManager#setWifiEnabled,CHANGE_WIFI_STATE
android.app.ActivityManager#getRunningTasks,GET_TASKS
android.app.ActivityManager#getRecentTasks,GET_TASKS
android.accounts.AccountManager#getAccounts,GET_ACCOUNTS
android.accounts.AccountManager#getAccountsByType,GET_ACCOUNTS
android.accounts.AccountManager#getUserData,GET_ACCOUNTS
android.hardware.Camera#open,CAMERA
android.media.AudioRecord#startRecording,RECORD_AUDIO
android.os.PowerManager$WakeLock#acquire,WAKE_LOCK
android.os.PowerManager$WakeLock#release,WAKE_LOCK
android.webkit.WebView#addJavascriptInterface,INTERNET
android.webkit.WebView#loadUrl,INTERNET
android.webkit.WebView#loadDataWithBaseURL,INTERNET
android.webkit.WebView#goBack,INTERNET
android.webkit.WebView#reload,INTERNET
java.net.URL#openConnection,INTERNET
java.net.URL#openStream,INTERNET
java.net.HttpURLConnection#connect,INTERNET
org.apache.http.impl.client.DefaultHttpClient#execute,INTERNET
java.io.FileOutputStream#write,WRITE_EXTERNAL_STORAGE
android.provider.Settings$System#putInt,WRITE_SETTINGS
android.net.VpnService#prepare,BIND_VPN_SERVICE
android.bluetooth.BluetoothAdapter#getAddress,BLUETOOTH
)";

inline constexpr const char* kSystemCsv = R"(signature_or_field,kind
java.util.Calendar#get,api
java.util.Calendar#getInstance,api
java.util.Calendar#getTimeInMillis,api
java.util.Date#getTime,api
java.lang.System#currentTimeMillis,api
android.telephony.TelephonyManager#getSimCountryIso,api
android.telephony.SmsManager#divideMessage,api
android.telephony.SmsManager#getDefault,api
android.telephony.SmsManager#getData,api
android.telephony.SmsMessage#getOriginatingAddress,api
android.telephony.SmsMessage#getMessageBody,api
android.content.Context#getPackageManager,api
android.content.Context#getSystemService,api
android.content.Context#getSharedPreferences,api
android.content.Context#checkSelfPermission,api
android.content.Context#checkPermission,api
androidx.core.content.ContextCompat#checkSelfPermission,api
android.content.pm.PackageManager#getPackageInfo,api
android.content.pm.PackageManager#getApplicationInfo,api
android.content.pm.PackageManager#getInstalledApplications,api
android.content.pm.PackageManager#getInstalledPackages,api
android.content.pm.PackageManager#queryIntentActivities,api
android.content.pm.PackageManager#getLaunchIntentForPackage,api
android.widget.CheckBox#isChecked,api
android.widget.AdapterView#getCount,api
android.app.KeyguardManager#isKeyguardLocked,api
java.net.NetworkInterface#getHardwareAddress,api
android.view.View#getId,api
java.io.File#exists,api
java.io.File#isDirectory,api
android.os.Environment#getExternalStorageDirectory,api
android.content.SharedPreferences#getInt,api
android.content.SharedPreferences#getString,api
android.content.SharedPreferences#getBoolean,api
android.content.Intent#getAction,api
android.net.NetworkInfo#getType,api
android.net.NetworkInfo#isConnected,api
android.os.Build#MODEL,property
android.os.Build#FINGERPRINT,property
android.os.Build#PRODUCT,property
android.os.Build#BRAND,property
android.os.Build$VERSION#SDK_INT,property
)";

inline constexpr const char* kTriggersCsv = R"(signature_or_field,category
java.util.Calendar#get,Time
java.util.Date#getTime,Time
java.util.Calendar#getTimeInMillis,Time
java.lang.System#currentTimeMillis,Time
android.os.Build#MODEL,SystemProperties
android.os.Build#FINGERPRINT,SystemProperties
android.os.Build#PRODUCT,SystemProperties
android.os.Build#BRAND,SystemProperties
android.telephony.TelephonyManager#getSubscriberId,SystemProperties
android.telephony.TelephonyManager#getDeviceId,SystemProperties
android.telephony.TelephonyManager#getSimCountryIso,Location
android.telephony.TelephonyManager#getCellLocation,Location
android.location.LocationManager#getLastKnownLocation,Location
android.telephony.SmsManager#divideMessage,SMS
android.telephony.SmsManager#getDefault,SMS
android.telephony.SmsManager#getData,SMS
android.telephony.SmsMessage#getOriginatingAddress,SMS
android.telephony.SmsMessage#getMessageBody,SMS
android.content.Context#getPackageManager,PackageManager
android.content.pm.PackageManager#getPackageInfo,PackageManager
android.content.pm.PackageManager#getApplicationInfo,PackageManager
android.content.pm.PackageManager#getInstalledApplications,PackageManager
android.content.pm.PackageManager#getInstalledPackages,PackageManager
android.content.pm.PackageManager#queryIntentActivities,PackageManager
android.content.pm.PackageManager#getLaunchIntentForPackage,PackageManager
android.widget.CheckBox#isChecked,Miscellaneous
android.app.KeyguardManager#isKeyguardLocked,Miscellaneous
java.net.NetworkInterface#getHardwareAddress,Miscellaneous
)";

inline constexpr const char* kSourcesCsv = R"(signature,origin
android.telephony.TelephonyManager#getDeviceId,default
android.telephony.TelephonyManager#getLine1Number,default
android.telephony.TelephonyManager#getSubscriberId,default
android.telephony.TelephonyManager#getSimSerialNumber,default
android.location.LocationManager#getLastKnownLocation,default
android.telephony.SmsMessage#getMessageBody,default
android.accounts.AccountManager#getAccounts,default
android.bluetooth.BluetoothAdapter#getAddress,default
android.net.wifi.WifiManager#getConnectionInfo,extended
android.app.ActivityManager#getRunningTasks,extended
android.app.ActivityManager#getRecentTasks,extended
android.accounts.AccountManager#getUserData,extended
android.net.ConnectivityManager#getNetworkInfo,extended
android.provider.Settings$System#getUriFor,extended
android.telephony.TelephonyManager#getNeighboringCellInfo,extended
android.telephony.TelephonyManager#getCellLocation,extended
android.accounts.AccountManager#getAccountsByType,extended
android.net.wifi.WifiManager#getScanResults,extended
android.net.wifi.WifiManager#getConfiguredNetworks,extended
java.net.URL#openConnection,extended
android.net.ConnectivityManager#getAllNetworkInfo,extended
android.net.VpnService#prepare,extended
android.hardware.Camera#open,extended
android.net.ConnectivityManager#getActiveNetworkInfo,extended
)";

inline constexpr const char* kSinksCsv = R"(signature
android.telephony.SmsManager#sendTextMessage
android.telephony.SmsManager#sendDataMessage
android.telephony.SmsManager#sendMultipartTextMessage
java.io.OutputStream#write
org.apache.http.impl.client.DefaultHttpClient#execute
android.util.Log#d
)";

inline constexpr const char* kWhitelistJson = R"([
  {
    "category": "SdkVersion",
    "originPatterns": ["android.os.Build$VERSION#SDK_INT"],
    "context": "none"
  },
  {
    "category": "UserInterface",
    "originPatterns": ["android.view.View#getId"],
    "context": "callback"
  },
  {
    "category": "File",
    "originPatterns": [
      "java.io.File#exists",
      "java.io.File#isDirectory",
      "android.os.Environment#getExternalStorageDirectory"
    ],
    "context": "none"
  },
  {
    "category": "Permission",
    "originPatterns": [
      "android.content.Context#checkSelfPermission",
      "android.content.Context#checkPermission",
      "androidx.core.content.ContextCompat#checkSelfPermission"
    ],
    "context": "none"
  },
  {
    "category": "Network",
    "originPatterns": [
      "android.net.ConnectivityManager#getActiveNetworkInfo",
      "android.net.NetworkInfo#getType",
      "android.net.NetworkInfo#isConnected"
    ],
    "context": "none"
  },
  {
    "category": "Intent",
    "originPatterns": ["android.content.Intent#getAction"],
    "context": "callback"
  },
  {
    "category": "SharedPreferences",
    "originPatterns": [
      "android.content.Context#getSharedPreferences",
      "android.content.SharedPreferences#getInt",
      "android.content.SharedPreferences#getString",
      "android.content.SharedPreferences#getBoolean"
    ],
    "context": "none"
  }
])";

}  // namespace hso::defaults

#endif  // HSO_DEFAULTS_HPP
